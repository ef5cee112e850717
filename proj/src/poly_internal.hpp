#pragma once

#include <vector>

#include "latpack/poly.hpp"

namespace latpack::detail {

/// Evaluation scale Σ|c|·|x|^e of p at x.
double abs_eval(const Poly& p, const Vec3& x);

/// |p(x)| ≤ rel·abs_eval(p, x).
bool vanishes_at(const Poly& p, const Vec3& x, double rel);

/// Damped Newton/Gauss-Newton refinement of a common root of eqs in the first
/// n variables; returns the best point seen.
Vec3 polish_root(const std::vector<Poly>& eqs, Vec3 x, int n, int iters = 30);

/// {x ∈ R^n : l(x) = 0}.
AffineSubspace hyperplane(const LinearPoly& l, int n);

/// Removes duplicates and subspaces contained in another entry.
void prune_contained(std::vector<AffineSubspace>& s, double tol);

}  // namespace latpack::detail
