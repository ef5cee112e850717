#include <cmath>

#include "latpack/error.hpp"
#include "latpack/polysolve.hpp"
#include "poly_internal.hpp"

namespace latpack {
namespace detail {

double abs_eval(const Poly& p, const Vec3& x) {
  return p.abs_coeffs().eval(Vec3{std::fabs(x.x), std::fabs(x.y), std::fabs(x.z)});
}

bool vanishes_at(const Poly& p, const Vec3& x, double rel) {
  return std::fabs(p.eval(x)) <= rel * std::max(abs_eval(p, x), 1e-300);
}

Vec3 polish_root(const std::vector<Poly>& eqs, Vec3 x, int n, int iters) {
  if (eqs.empty() || n == 0) return x;
  std::vector<std::vector<Poly>> jac(eqs.size());
  for (std::size_t i = 0; i < eqs.size(); ++i)
    for (int v = 0; v < n; ++v) jac[i].push_back(eqs[i].derivative(v));
  auto resid = [&](const Vec3& p) {
    double s = 0.0;
    for (const Poly& e : eqs) {
      const double r = e.eval(p);
      s += r * r;
    }
    return s;
  };
  double best = resid(x);
  double mu = 1e-12;
  for (int it = 0; it < iters && best > 0.0; ++it) {
    // Normal equations (JᵀJ + μ·diag) δ = −Jᵀr, padded to 3×3.
    Mat3 jtj;
    Vec3 jtr;
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      const double r = eqs[i].eval(x);
      Vec3 g;
      for (int v = 0; v < n; ++v) g[static_cast<std::size_t>(v)] = jac[i][static_cast<std::size_t>(v)].eval(x);
      for (int a = 0; a < 3; ++a) {
        jtr[static_cast<std::size_t>(a)] += g[static_cast<std::size_t>(a)] * r;
        for (int b = 0; b < 3; ++b) jtj(a, b) += g[static_cast<std::size_t>(a)] * g[static_cast<std::size_t>(b)];
      }
    }
    double scale = 0.0;
    for (int a = 0; a < n; ++a) scale = std::max(scale, jtj(a, a));
    if (scale == 0.0) break;
    bool improved = false;
    for (int tries = 0; tries < 8 && !improved; ++tries) {
      Mat3 m = jtj;
      for (int a = 0; a < 3; ++a) m(a, a) += a < n ? mu * scale : 1.0;
      if (std::fabs(m.det()) < 1e-300) {
        mu *= 100.0;
        continue;
      }
      const Vec3 step = m.inverse() * jtr;
      const Vec3 nx = x - step;
      const double r = resid(nx);
      if (r < best) {
        x = nx;
        best = r;
        improved = true;
        mu = std::max(mu * 0.1, 1e-15);
      } else {
        mu *= 100.0;
      }
    }
    if (!improved) break;
  }
  return x;
}

AffineSubspace hyperplane(const LinearPoly& l, int n) {
  AffineSubspace s;
  s.ambient = n;
  Vec3 a;
  for (int v = 0; v < n; ++v) a[static_cast<std::size_t>(v)] = l.a[static_cast<std::size_t>(v)];
  const double a2 = a.norm2();
  s.base = a * (-l.c0 / a2);
  const Vec3 u = a / std::sqrt(a2);
  std::vector<Vec3> cand;
  for (int v = 0; v < n; ++v) {
    Vec3 e;
    e[static_cast<std::size_t>(v)] = 1.0;
    cand.push_back(e - u * dot(e, u));
  }
  orthonormalize(cand, 1e-8);
  cand.resize(static_cast<std::size_t>(std::max(n - 1, 0)));
  s.dirs = cand;
  return s;
}

void prune_contained(std::vector<AffineSubspace>& s, double tol) {
  std::vector<AffineSubspace> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < s.size() && !drop; ++j) {
      if (i == j) continue;
      const double t = tol * std::max(1.0, s[i].base.norm());
      if (s[j].contains(s[i], t)) {
        // Keep the first of two identical entries.
        drop = !(s[i].contains(s[j], t) && i < j);
      }
    }
    if (!drop) out.push_back(s[i]);
  }
  s = std::move(out);
}

}  // namespace detail

namespace {

using detail::hyperplane;
using detail::polish_root;
using detail::vanishes_at;

constexpr double kPointTolerance = 1e-7;
constexpr double kDedupe = 1e-8;

AffineSubspace point2(double x, double y) {
  AffineSubspace s;
  s.ambient = 2;
  s.base = {x, y, 0.0};
  return s;
}

void add_unique_lines(std::vector<AffineSubspace>& out, const std::vector<LinearPoly>& ls) {
  std::vector<LinearPoly> seen;
  for (const LinearPoly& l : ls) {
    bool dup = false;
    for (const LinearPoly& o : seen)
      if (l.similarity(o) > 1.0 - 1e-9) dup = true;
    if (dup) continue;
    seen.push_back(l);
    out.push_back(hyperplane(l, 2));
  }
}

Poly restrict_var(const Poly& f, int var, double value) { return f.substitute(var, Poly::constant(value)); }

// Candidate points (x0, y0) of V(f, g) with y0 a root of a nonzero eliminant `res`
// in variable y, where x is the eliminated variable.
void fiber_points(const Poly& res, const Poly& f, const Poly& g, int x, std::vector<AffineSubspace>& out) {
  const int y = 1 - x;
  const Poly r = res.trimmed();
  if (r.is_constant()) return;
  for (double y0 : real_roots(r, y)) {
    const Poly fr = restrict_var(f, y, y0).trimmed(1e-12);
    const Poly gr = restrict_var(g, y, y0).trimmed(1e-12);
    const double fref = restrict_var(f.abs_coeffs(), y, std::fabs(y0)).max_abs();
    const double gref = restrict_var(g.abs_coeffs(), y, std::fabs(y0)).max_abs();
    const bool fz = fr.max_abs() <= kPointTolerance * fref;
    const bool gz = gr.max_abs() <= kPointTolerance * gref;
    std::vector<double> xs;
    if (fz && gz) {
      // Both vanish on the whole fiber: report the line.
      LinearPoly l;
      l.a[static_cast<std::size_t>(y)] = 1.0;
      l.c0 = -y0;
      out.push_back(hyperplane(l, 2));
      continue;
    }
    const Poly& pick = fz ? gr : (gz ? fr : (fr.degree(x) <= gr.degree(x) && fr.uses(x) ? fr : gr));
    if (!pick.uses(x)) continue;
    xs = real_roots(pick, x);
    for (double x0 : xs) {
      Vec3 p;
      p[static_cast<std::size_t>(x)] = x0;
      p[static_cast<std::size_t>(y)] = y0;
      p = polish_root({f, g}, p, 2);
      if (vanishes_at(f, p, kPointTolerance) && vanishes_at(g, p, kPointTolerance)) out.push_back(point2(p.x, p.y));
    }
  }
}

std::vector<AffineSubspace> pair_rec(Poly f, Poly g, int depth);

}  // namespace

std::vector<AffineSubspace> conic_components(const Poly& input) {
  const Poly q = input.trimmed();
  if (q.is_zero()) throw ZeroPolynomial("conic_components of the zero polynomial");
  if (q.total_degree() > 2 || q.uses(2)) throw DegreeTooHigh("conic_components expects a conic in x, y");
  std::vector<AffineSubspace> out;
  if (q.is_constant()) return out;
  const LinearFactorization lf = linear_factors(q);
  add_unique_lines(out, lf.factors);

  // Isolated point: the centre, when the quadratic part is definite and q vanishes there.
  const double a = q.coeff(2, 0), b = q.coeff(1, 1), c = q.coeff(0, 2), d = q.coeff(1, 0), e = q.coeff(0, 1);
  const double det = 4 * a * c - b * b;
  const double scale = q.max_abs();
  if (det > 1e-10 * scale * scale) {
    const double x0 = (-2 * c * d + b * e) / det;
    const double y0 = (b * d - 2 * a * e) / det;
    const Vec3 p{x0, y0, 0};
    if (vanishes_at(q, p, 1e-9)) {
      bool on_line = false;
      for (const AffineSubspace& s : out) on_line = on_line || s.distance(p) <= 1e-9 * std::max(1.0, p.norm());
      if (!on_line) out.push_back(point2(x0, y0));
    }
  }
  return out;
}

std::vector<AffineSubspace> bivariate_isolated(const Poly& input) {
  const Poly f = input.trimmed();
  if (f.is_zero()) throw ZeroPolynomial("bivariate_isolated of the zero polynomial");
  if (f.total_degree() > 4 || f.uses(2)) throw DegreeTooHigh("bivariate_isolated expects degree ≤ 4 in x, y");
  std::vector<AffineSubspace> out;
  if (f.is_constant()) return out;
  const LinearFactorization lf = linear_factors(f);
  add_unique_lines(out, lf.factors);
  const Poly g = lf.remainder;
  if (g.is_constant() || g.num_vars_used() <= 1) return out;

  const int x = g.degree(0) >= g.degree(1) ? 0 : 1;
  const Poly gx = g.derivative(x).trimmed(1e-14);
  const Poly res = resultant(g, gx, x);
  const bool vanish = resultant_vanishes(res, g, gx, x);

  if (!res.trimmed().is_constant()) {
    // Isolated roots are singular points: g = g_x = g_y = 0.
    const Poly gy = g.derivative(1 - x);
    std::vector<AffineSubspace> pts;
    fiber_points(res, gx, g, x, pts);
    for (const AffineSubspace& s : pts) {
      if (s.dim() != 0) continue;
      const Vec3 p = polish_root({gx, gy, g}, s.base, 2);
      if (vanishes_at(g, p, kPointTolerance)) out.push_back(point2(p.x, p.y));
    }
  }
  if (vanish && g.degree(x) == 4) {
    // g = g2·h with g2 quadratic and g_x = g2·l for a linear factor l.
    for (const LinearPoly& l : linear_factors(gx).factors) {
      if (std::fabs(l.a[static_cast<std::size_t>(x)]) <= 1e-9) continue;
      const auto g2 = divide_by_linear(gx, l);
      if (!g2) continue;
      const Poly g2t = g2->trimmed();
      if (g2t.degree(x) != 2 || !g2t.coefficients_in(x).back().is_constant()) continue;
      const auto h = try_divide(g, g2t, x);
      if (!h) continue;
      for (const Poly& part : {g2t, h->trimmed()})
        if (!part.is_constant() && part.total_degree() <= 2)
          for (const AffineSubspace& s : conic_components(part)) out.push_back(s);
      break;
    }
  }
  detail::prune_contained(out, kDedupe);
  return out;
}

namespace {

std::vector<AffineSubspace> pair_rec(Poly f, Poly g, int depth) {
  std::vector<AffineSubspace> out;
  f = f.trimmed();
  g = g.trimmed();
  if (f.is_zero() && g.is_zero()) return out;
  if (f.is_zero()) return bivariate_isolated(g);
  if (g.is_zero()) return bivariate_isolated(f);

  std::vector<LinearPoly> common;
  for (int round = 0; round < 4; ++round) {
    if (f.is_constant() || g.is_constant()) break;
    const std::vector<LinearPoly> cl = common_linear_factors({f, g});
    if (cl.empty()) break;
    for (const LinearPoly& l : cl) {
      common.push_back(l);
      if (auto q = divide_by_linear(f, l)) f = q->trimmed();
      if (auto q = divide_by_linear(g, l)) g = q->trimmed();
    }
  }
  add_unique_lines(out, common);
  if (f.is_constant() || g.is_constant()) return out;

  const int x = (f.uses(0) && g.uses(0)) ? 0 : ((f.uses(1) && g.uses(1)) ? 1 : (f.uses(0) || g.uses(0) ? 0 : 1));
  if (!f.uses(1 - x) && !g.uses(1 - x)) return out;  // univariate in x: common roots are common factors

  const Poly res = resultant(f, g, x);
  const bool vanish = f.uses(x) && g.uses(x) && resultant_vanishes(res, f, g, x);
  fiber_points(res, f, g, x, out);

  if (vanish && depth < 6) {
    const LinearFactorization lg = linear_factors(g);
    if (!lg.factors.empty()) {
      const LinearPoly& l = lg.factors.front();
      if (const auto gh = divide_by_linear(g, l)) {
        for (const AffineSubspace& s : pair_rec(f, *gh, depth + 1)) out.push_back(s);
      }
      // f restricted to the line l = 0.
      const AffineSubspace line = hyperplane(l, 2);
      const Vec3 b = line.base, u = line.dirs.front();
      const Poly t = Poly::variable(0);
      const Poly fr = f.compose({Poly::constant(b.x) + t * u.x, Poly::constant(b.y) + t * u.y, Poly()}).trimmed(1e-12);
      if (fr.max_abs() <= kPointTolerance * detail::abs_eval(f, b)) {
        out.push_back(line);
      } else if (fr.uses(0)) {
        for (double t0 : real_roots(fr, 0)) {
          Vec3 p = polish_root({f, l.to_poly()}, b + u * t0, 2);
          if (vanishes_at(f, p, kPointTolerance)) out.push_back(point2(p.x, p.y));
        }
      }
    } else if (g.total_degree() <= 4) {
      for (const AffineSubspace& s : bivariate_isolated(g)) out.push_back(s);
    }
  }
  return out;
}

}  // namespace

std::vector<AffineSubspace> bivariate_pair_isolated(const Poly& f, const Poly& g) {
  if (f.trimmed().is_zero() || g.trimmed().is_zero()) throw ZeroPolynomial("bivariate_pair_isolated of a zero polynomial");
  if (f.uses(2) || g.uses(2)) throw DegreeTooHigh("bivariate_pair_isolated expects polynomials in x, y");
  if (f.total_degree() > 4 || g.total_degree() > 4) throw DegreeTooHigh("bivariate_pair_isolated degree bound exceeded");
  std::vector<AffineSubspace> out = pair_rec(f, g, 0);
  detail::prune_contained(out, kDedupe);
  return out;
}

}  // namespace latpack
