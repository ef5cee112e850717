#pragma once

#include <array>
#include <string>
#include <vector>

#include "latpack/polytope.hpp"

namespace latpack {

/// Golden ratio (1+√5)/2.
inline constexpr double kTau = 1.6180339887498948482;
inline constexpr double kSqrt2 = 1.4142135623730950488;
inline constexpr double kSqrt5 = 2.2360679774997896964;

struct ReferenceDensity {
  double value = 0.0;
  std::string closed_form;
};

/// Catalog names in a fixed order: the five Platonic solids, then the thirteen
/// Archimedean solids.
const std::vector<std::string>& solid_names();
bool is_catalog_solid(const std::string& name);

/// Built-in construction of a catalog solid. Throws UnknownSolid.
Polytope make_solid(const std::string& name);
/// Published density of a densest lattice packing. Throws UnknownSolid.
ReferenceDensity reference_density(const std::string& name);
/// Expected (vertices, edges, facets). Throws UnknownSolid.
std::array<std::size_t, 3> reference_f_vector(const std::string& name);
/// Published optimal packing lattice of the catalog representation, basis in
/// columns. Throws UnknownSolid.
Mat3 reference_basis(const std::string& name);
/// Whether the solid belongs to the quick acceptance tier.
bool fast_tier(const std::string& name);

/// Real root of y³ + y² + y = 1.
double snub_cube_y();

}  // namespace latpack
