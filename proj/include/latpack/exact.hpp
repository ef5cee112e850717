#pragma once

#include <optional>
#include <string>

#include "latpack/polytope.hpp"
#include "latpack/search.hpp"

namespace latpack {

/// p/q with q ≤ max_den and |x − p/q| ≤ tol·max(1, |x|), by continued fractions.
std::optional<std::pair<long long, long long>> rationalize(double x, long long max_den, double tol = 1e-12);

/// "p/q" or "(a + b√d)/c" matching x within 1e-12, searching small denominators.
std::optional<std::string> closed_form(double x);

struct ExactReport {
  bool verified = false;               // rational reconstruction passed every exact check
  std::optional<std::string> density;  // exact value when verified, else a closed form match
  std::string note;
};

/// Rebuilds P, P − P and the winning basis over the rationals and re-checks
/// that the test set lies on the boundary, that no nonzero lattice point is
/// interior, and that vol(P)/det matches the floating-point density.
ExactReport verify_exact(const Polytope& p, const PackingResult& r);

}  // namespace latpack
