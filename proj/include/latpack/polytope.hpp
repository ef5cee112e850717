#pragma once

#include <array>
#include <string>
#include <vector>

#include "latpack/geometry.hpp"

namespace latpack {

/// a·x ≤ b. Stored with a unit normal.
struct Halfspace {
  Vec3 normal;
  double offset = 0.0;
};

/// Facet i lies on halfspaces[i]; the vertex cycle runs counterclockwise seen from outside.
struct Facet {
  std::vector<int> vertices;
};

struct Edge {
  int v0 = -1, v1 = -1;
  int f0 = -1, f1 = -1;
};

struct Box {
  Vec3 lo, hi;
};

enum class PointClass { Interior, Boundary, Exterior };

/// Relative geometric tolerance (times the circumradius) for incidence predicates.
inline constexpr double kGeoTolerance = 1e-9;

/// Bounded full-dimensional 3-polytope with its complete face lattice.
/// Immutable after construction; facet i corresponds to halfspaces[i].
class Polytope {
 public:
  std::vector<Halfspace> halfspaces;
  std::vector<Vec3> vertices;
  std::vector<Facet> facets;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> neighbors;  // edge-neighbours per facet, ascending
  bool symmetric = false;
  std::vector<int> antipode;  // facet with normal −a (symmetric only), else -1

  std::size_t num_facets() const { return halfspaces.size(); }
  std::array<std::size_t, 3> f_vector() const { return {vertices.size(), edges.size(), facets.size()}; }
  /// max ‖v‖ over vertices (about the origin, not the centroid).
  double circumradius() const;
  Vec3 vertex_centroid() const;
  double volume() const;
  /// Largest a_i·x − b_i; ≤ 0 inside.
  double max_violation(const Vec3& x) const;
  /// max over vertices of a·v.
  double support(const Vec3& a) const;
};

/// Convex hull with coplanar faces merged. Throws DegenerateInput for flat input.
Polytope convex_hull(const std::vector<Vec3>& points);

/// Bounded intersection of halfspaces; redundant halfspaces are dropped.
/// Throws Unbounded or EmptyInterior.
Polytope from_halfspaces(const std::vector<Halfspace>& hs);

/// P − P, with exact (a,b)/(−a,b) pairing.
Polytope difference_body(const Polytope& p);

/// Image under x ↦ m·x + shift.
Polytope transformed(const Polytope& p, const Mat3& m, const Vec3& shift = {});

PointClass classify_point(const Polytope& p, const Vec3& x, double tol);

Box facet_box(const Polytope& p, int facet);
bool boxes_intersect(const Box& a, const Box& b);
Box minkowski_box(const Box& a, const Box& b, int sigma);

double volume(const Polytope& p);

}  // namespace latpack
