#pragma once

#include <vector>

#include "latpack/polytope.hpp"

namespace latpack::detail {

/// Builds the face lattice from candidate points and supporting planes.
/// Points not on ≥ 3 spanning planes and planes holding < 3 points are dropped.
Polytope assemble(std::vector<Vec3> points, std::vector<Halfspace> planes, double eps);

}  // namespace latpack::detail
