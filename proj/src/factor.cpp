#include <cmath>
#include <random>

#include "latpack/error.hpp"
#include "latpack/linalg.hpp"
#include "latpack/polysolve.hpp"

namespace latpack {
namespace {

constexpr int kSampleRetries = 8;
constexpr double kSampleNoise = 1e-3;
constexpr double kSameLine = 1e-9;

struct FoundFactor {
  LinearPoly factor;
  Poly quotient;
};

// Restriction of f to x_o = u (o ranging over `others`), as a polynomial in x_v.
std::vector<double> restrict_to(const Poly& f, int v, const std::vector<int>& others, const std::vector<double>& u) {
  std::array<Poly, 3> vals{Poly::variable(0), Poly::variable(1), Poly::variable(2)};
  for (std::size_t k = 0; k < others.size(); ++k) vals[static_cast<std::size_t>(others[k])] = Poly::constant(u[k]);
  return f.compose(vals).as_univariate(v);
}

std::optional<FoundFactor> find_factor(const Poly& f, int v, std::mt19937_64& rng) {
  std::vector<int> others;
  for (int w = 0; w < 3; ++w)
    if (w != v && f.uses(w)) others.push_back(w);
  const std::size_t dd = others.size();

  // Sample points: unit vectors and the origin, perturbed when a restriction vanishes.
  std::vector<std::vector<double>> pts(dd + 1, std::vector<double>(dd, 0.0));
  for (std::size_t k = 0; k < dd; ++k) pts[k][k] = 1.0;
  std::vector<std::vector<double>> zs;
  std::uniform_real_distribution<double> noise(-kSampleNoise, kSampleNoise);
  const Poly fa = f.abs_coeffs();
  bool ok = false;
  for (int attempt = 0; attempt <= kSampleRetries && !ok; ++attempt) {
    if (attempt > 0)
      for (auto& p : pts)
        for (double& x : p) x += noise(rng);
    ok = true;
    zs.clear();
    for (const auto& p : pts) {
      std::vector<double> r = restrict_to(f, v, others, p);
      std::vector<double> pa(p.size());
      for (std::size_t k = 0; k < p.size(); ++k) pa[k] = std::fabs(p[k]);
      double mag = 0.0, ref = 0.0;
      for (double c : r) mag = std::max(mag, std::fabs(c));
      for (double c : restrict_to(fa, v, others, pa)) ref = std::max(ref, c);
      if (mag <= 1e-9 * ref) {
        ok = false;
        break;
      }
      zs.push_back(real_roots(r));
      if (zs.back().empty()) return std::nullopt;
    }
  }
  if (!ok) return std::nullopt;

  // Solve (1, u_i)·l = z_i for each root combination and test the candidate.
  DenseMatrix a(static_cast<int>(dd + 1), static_cast<int>(dd + 1));
  for (std::size_t i = 0; i <= dd; ++i) {
    a(static_cast<int>(i), 0) = 1.0;
    for (std::size_t k = 0; k < dd; ++k) a(static_cast<int>(i), static_cast<int>(k + 1)) = pts[i][k];
  }
  std::vector<std::size_t> idx(dd + 1, 0);
  while (true) {
    std::vector<double> rhs(dd + 1);
    for (std::size_t i = 0; i <= dd; ++i) rhs[i] = zs[i][idx[i]];
    if (const auto l = solve_square(a, rhs)) {
      LinearPoly cand;
      cand.a[static_cast<std::size_t>(v)] = 1.0;
      cand.c0 = -(*l)[0];
      for (std::size_t k = 0; k < dd; ++k) cand.a[static_cast<std::size_t>(others[k])] = -(*l)[k + 1];
      if (auto q = divide_by_linear(f, cand)) return FoundFactor{cand, *q};
    }
    std::size_t i = 0;
    while (i <= dd && ++idx[i] == zs[i].size()) idx[i++] = 0;
    if (i > dd) break;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Poly> divide_by_linear(const Poly& f, const LinearPoly& l) {
  if (f.is_zero()) return Poly();
  const int v = l.pivot();
  const double lead = l.a[static_cast<std::size_t>(v)];
  if (lead == 0.0) throw PreconditionViolated("divide_by_linear: linear polynomial has no variable");
  const int m = f.degree(v);
  if (m <= 0) return std::nullopt;

  // l = lead·(x_v + lbar)
  LinearPoly rest = l;
  rest.a[static_cast<std::size_t>(v)] = 0.0;
  const Poly lbar = rest.to_poly() * (1.0 / lead);
  const std::vector<Poly> fc = f.coefficients_in(v);
  std::vector<Poly> q(static_cast<std::size_t>(m));
  q[static_cast<std::size_t>(m - 1)] = fc[static_cast<std::size_t>(m)];
  for (int i = m - 2; i >= 0; --i)
    q[static_cast<std::size_t>(i)] = fc[static_cast<std::size_t>(i + 1)] - q[static_cast<std::size_t>(i + 1)] * lbar;
  const Poly quotient = Poly::from_coefficients_in(v, q) * (1.0 / lead);
  const Poly residual = f - l.to_poly() * quotient;
  if (residual.max_abs() > kFactorTolerance * f.max_abs()) return std::nullopt;
  return quotient;
}

LinearFactorization linear_factors(const Poly& f) {
  Poly rem = f.trimmed();
  if (rem.is_zero()) throw ZeroPolynomial("linear_factors of the zero polynomial");
  LinearFactorization out;
  std::mt19937_64 rng(0x5eed1234u);
  for (int v = 0; v < 3; ++v) {
    while (rem.uses(v)) {
      const auto found = find_factor(rem, v, rng);
      if (!found) break;
      // Keep f = remainder · Π factors with unit-norm factors.
      const LinearPoly n = found->factor.normalized();
      const double s = n.a[static_cast<std::size_t>(n.pivot())] / found->factor.a[static_cast<std::size_t>(n.pivot())];
      out.factors.push_back(n);
      rem = (found->quotient * (1.0 / s)).trimmed();
    }
  }
  out.remainder = rem;
  return out;
}

std::vector<LinearPoly> common_linear_factors(const std::vector<Poly>& fs) {
  std::vector<Poly> nz;
  for (const Poly& f : fs) {
    Poly t = f.trimmed();
    if (!t.is_zero()) nz.push_back(t);
  }
  if (nz.empty()) return {};
  std::vector<LinearPoly> out;
  for (const LinearPoly& l : linear_factors(nz[0]).factors) {
    bool dup = false;
    for (const LinearPoly& o : out)
      if (l.similarity(o) > 1.0 - kSameLine) dup = true;
    if (dup) continue;
    bool all = true;
    for (std::size_t j = 1; j < nz.size() && all; ++j) all = divide_by_linear(nz[j], l).has_value();
    if (all) out.push_back(l);
  }
  return out;
}

std::optional<Poly> try_divide(const Poly& f, const Poly& g, int var) {
  if (g.is_zero()) throw PreconditionViolated("try_divide by the zero polynomial");
  const int n = std::max(g.degree(var), 0);
  const std::vector<Poly> gc = g.coefficients_in(var);
  const Poly& lead = gc[static_cast<std::size_t>(n)];
  if (!lead.is_constant()) throw PreconditionViolated("try_divide: leading coefficient is not constant");
  const double g0 = lead.coeff(0, 0, 0);
  if (f.is_zero()) return Poly();
  const int m = std::max(f.degree(var), 0);
  if (m < n) return std::nullopt;

  Poly rem = f;
  Poly h;
  const Poly x = Poly::variable(var);
  for (int e = m; e >= n; --e) {
    const std::vector<Poly> rc = rem.coefficients_in(var);
    if (e >= static_cast<int>(rc.size())) continue;
    const Poly c = rc[static_cast<std::size_t>(e)] * (1.0 / g0);
    if (c.is_zero()) continue;
    const Poly term = c * x.pow(e - n);
    h += term;
    rem -= term * g;
    // Cancel the rounding residue of the eliminated coefficient exactly.
    const std::vector<Poly> after = rem.coefficients_in(var);
    if (after.size() > static_cast<std::size_t>(e)) rem -= after[static_cast<std::size_t>(e)] * x.pow(e);
  }
  if (rem.max_abs() > kFactorTolerance * f.max_abs()) return std::nullopt;
  return h;
}

std::optional<Poly> try_divide(const Poly& f, const Poly& g) {
  for (int v = 0; v < 3; ++v) {
    if (g.degree(v) <= 0) continue;
    if (g.coefficients_in(v).back().is_constant()) return try_divide(f, g, v);
  }
  if (g.is_constant() && !g.is_zero()) return f * (1.0 / g.coeff(0, 0, 0));
  throw PreconditionViolated("try_divide: no variable with a constant leading coefficient");
}

}  // namespace latpack
