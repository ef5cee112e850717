#include <algorithm>
#include <cmath>

#include "latpack/error.hpp"
#include "latpack/lp.hpp"
#include "latpack/search.hpp"

namespace latpack {
namespace {

std::vector<IVec3> exclusion_points(int kind) {
  if (kind == 1) return {{-1, 1, 1}, {1, -1, 1}, {1, 1, -1}};
  if (kind == 2) return {{1, 1, 1}};
  return {};
}

// x(λ) = W(λ)·u as base + Σ λ_j dir_j.
struct AffinePoint {
  Vec3 base;
  std::vector<Vec3> dirs;
};

AffinePoint affine_point(const MatrixFamily& fam, const IVec3& u) {
  AffinePoint p{lattice_point(fam.c, u), {}};
  for (const Mat3& m : fam.m) p.dirs.push_back(lattice_point(m, u));
  return p;
}

std::vector<double> coeffs(const AffinePoint& x, const Vec3& a) {
  std::vector<double> r;
  for (const Vec3& d : x.dirs) r.push_back(dot(a, d));
  return r;
}

// Adds a·x(λ) ≤ b (or = b). Returns false when a constant row is violated.
bool add_row(LPProblem& lp, const AffinePoint& x, const Vec3& a, double b, bool equality, double tol) {
  std::vector<double> r = coeffs(x, a);
  const double rhs = b - dot(a, x.base);
  double mag = 0.0;
  for (double v : r) mag = std::max(mag, std::fabs(v));
  if (mag <= 1e-12) {
    if (equality) return std::fabs(rhs) <= tol;
    return rhs >= -tol;
  }
  if (equality)
    lp.add_eq(std::move(r), rhs);
  else
    lp.add_le(std::move(r), rhs);
  return true;
}

// 𝒜: every W(λ) u^i in facet F_{l_i}. Returns false when trivially empty.
bool build_containment_lp(LPProblem& lp, const Polytope& p0, const Selection& sel, const MatrixFamily& fam,
                          int kind, double tol) {
  const auto us = test_set_vectors(kind);
  for (std::size_t i = 0; i < us.size(); ++i) {
    const AffinePoint x = affine_point(fam, us[i]);
    const int f = sel[i];
    const Halfspace& h = p0.halfspaces[static_cast<std::size_t>(f)];
    if (!add_row(lp, x, h.normal, h.offset, true, tol)) return false;
    for (int m : p0.neighbors[static_cast<std::size_t>(f)]) {
      const Halfspace& g = p0.halfspaces[static_cast<std::size_t>(m)];
      if (!add_row(lp, x, g.normal, g.offset, false, tol)) return false;
    }
  }
  return true;
}

bool excluded_ok(const Polytope& p0, const Mat3& w, int kind, double tol) {
  for (const IVec3& e : exclusion_points(kind))
    if (p0.max_violation(lattice_point(w, e)) < -tol) return false;
  return true;
}

// Outer closed halfspace of facet f for the exclusion point e: a_f·x(λ) ≥ b_f.
bool add_outside_row(LPProblem& lp, const MatrixFamily& fam, const IVec3& e, const Halfspace& h, double tol) {
  const AffinePoint x = affine_point(fam, e);
  Halfspace neg{-h.normal, -h.offset};
  return add_row(lp, x, neg.normal, neg.offset, false, tol);
}

std::optional<Mat3> exhaustive_exclusions(const Polytope& p0, const LPProblem& base, const MatrixFamily& fam,
                                          int kind, double tol) {
  const std::vector<IVec3> pts = exclusion_points(kind);
  const int n = static_cast<int>(p0.num_facets());
  // Facets that can individually keep each exclusion point outside.
  std::vector<std::vector<int>> options(pts.size());
  for (std::size_t t = 0; t < pts.size(); ++t)
    for (int f = 0; f < n; ++f) {
      LPProblem lp = base;
      if (!add_outside_row(lp, fam, pts[t], p0.halfspaces[static_cast<std::size_t>(f)], tol)) continue;
      if (lp_feasible(lp)) options[t].push_back(f);
    }
  for (const auto& o : options)
    if (o.empty()) return std::nullopt;
  std::vector<std::size_t> idx(pts.size(), 0);
  while (true) {
    LPProblem lp = base;
    bool ok = true;
    for (std::size_t t = 0; t < pts.size() && ok; ++t)
      ok = add_outside_row(lp, fam, pts[t], p0.halfspaces[static_cast<std::size_t>(options[t][idx[t]])], tol);
    if (ok)
      if (const auto lam = lp_feasible(lp)) return fam.at(*lam);
    std::size_t t = 0;
    while (t < pts.size() && ++idx[t] == options[t].size()) idx[t++] = 0;
    if (t == pts.size()) break;
  }
  return std::nullopt;
}

}  // namespace

bool check_admissible(const Polytope& p0, const Mat3& w, SearchCase c, double tol) {
  const double t = tol * p0.circumradius();
  const int kind = test_set_kind(c);
  for (const IVec3& u : test_set_vectors(kind))
    if (classify_point(p0, lattice_point(w, u), t) != PointClass::Boundary) return false;
  return excluded_ok(p0, w, kind, t);
}

SubspaceVerdict admissible_in_subspace(const Polytope& p0, const Selection& sel, const SlotPlanes& planes,
                                       const MatrixFamily& fam, SearchCase c, bool exhaustive) {
  (void)planes;
  SubspaceVerdict v;
  const int kind = test_set_kind(c);
  const double tol = kGeoTolerance * p0.circumradius();
  LPProblem lp(fam.dim());
  if (!build_containment_lp(lp, p0, sel, fam, kind, tol)) return v;
  Mat3 w = fam.c;
  if (fam.dim() > 0) {
    const auto lam = lp_feasible(lp);
    if (!lam) return v;
    w = fam.at(*lam);
  }
  if (std::fabs(w.det()) <= 1e-12) return v;
  if (excluded_ok(p0, w, kind, tol)) {
    v.basis = w;
    return v;
  }
  if (!exhaustive || fam.dim() == 0) {
    v.deferred = true;
    return v;
  }
  if (auto found = exhaustive_exclusions(p0, lp, fam, kind, tol)) {
    if (std::fabs(found->det()) > 1e-12) v.basis = *found;
  }
  return v;
}

double deepest_lattice_point(const Polytope& p0, const Mat3& w) {
  const double r = p0.circumradius();
  const Mat3 inv = w.inverse();
  int bound[3];
  for (int i = 0; i < 3; ++i) {
    const double nrm = inv.row(i).norm();
    bound[i] = static_cast<int>(std::floor(r * nrm + 1e-9));
  }
  double deepest = -1e300;
  for (int a = -bound[0]; a <= bound[0]; ++a)
    for (int b = -bound[1]; b <= bound[1]; ++b)
      for (int c = -bound[2]; c <= bound[2]; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        const Vec3 z = lattice_point(w, {a, b, c});
        if (z.norm() > r * (1 + 1e-9)) continue;
        deepest = std::max(deepest, -p0.max_violation(z));
      }
  return deepest;
}

bool verify_admissible_bruteforce(const Polytope& p0, const Mat3& w, double tol) {
  if (std::fabs(w.det()) <= 1e-300) throw PreconditionViolated("singular basis");
  return deepest_lattice_point(p0, w) <= tol * p0.circumradius();
}

}  // namespace latpack
