#include <algorithm>
#include <cmath>
#include <limits>

#include "latpack/error.hpp"
#include "latpack/polysolve.hpp"

namespace latpack {
namespace {

// A critical point c of f with |f(c)| below this fraction of Σ|c_i||c|^i is
// reported as a root of even multiplicity.
constexpr double kTouchTolerance = 1e-10;

long double horner(const std::vector<long double>& c, long double x) {
  long double s = 0.0L;
  for (std::size_t i = c.size(); i-- > 0;) s = s * x + c[i];
  return s;
}

long double horner_abs(const std::vector<long double>& c, long double x) {
  long double s = 0.0L;
  const long double ax = std::fabs(x);
  for (std::size_t i = c.size(); i-- > 0;) s = s * ax + std::fabs(c[i]);
  return s;
}

std::vector<long double> derivative(const std::vector<long double>& c) {
  std::vector<long double> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<long double>(i));
  return d;
}

// Root in (a, b) of a function monotone there with opposite signs at the ends.
long double bracketed_root(const std::vector<long double>& c, const std::vector<long double>& d, long double a,
                           long double b, long double fa) {
  long double x = 0.5L * (a + b);
  for (int it = 0; it < 200; ++it) {
    const long double fx = horner(c, x);
    if (fx == 0.0L) return x;
    if ((fx < 0) == (fa < 0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
    }
    const long double dx = horner(d, x);
    long double nx = dx != 0.0L ? x - fx / dx : 0.5L * (a + b);
    if (!(nx > a && nx < b)) nx = 0.5L * (a + b);
    if (nx == x || b - a <= 4 * std::numeric_limits<long double>::epsilon() * std::fabs(x)) return nx;
    x = nx;
  }
  return x;
}

// Distinct real roots of c (degree ≥ 1) inside [lo, hi].
std::vector<long double> roots_in(const std::vector<long double>& c, long double lo, long double hi) {
  const std::size_t n = c.size() - 1;
  if (n == 1) {
    const long double r = -c[0] / c[1];
    return (r >= lo && r <= hi) ? std::vector<long double>{r} : std::vector<long double>{};
  }
  const std::vector<long double> d = derivative(c);
  const std::vector<long double> crit = roots_in(d, lo, hi);

  std::vector<long double> out;
  for (long double x : crit)
    if (std::fabs(horner(c, x)) <= kTouchTolerance * horner_abs(c, x)) out.push_back(x);

  std::vector<long double> pts;
  pts.push_back(lo);
  pts.insert(pts.end(), crit.begin(), crit.end());
  pts.push_back(hi);
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const long double a = pts[k], b = pts[k + 1];
    if (!(b > a)) continue;
    const long double fa = horner(c, a), fb = horner(c, b);
    if ((fa < 0 && fb > 0) || (fa > 0 && fb < 0)) out.push_back(bracketed_root(c, d, a, b, fa));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<double> real_roots(const std::vector<double>& in) {
  double m = 0.0;
  for (double v : in) m = std::max(m, std::fabs(v));
  if (m == 0.0) throw ZeroPolynomial("real_roots of the zero polynomial");
  std::vector<long double> c(in.begin(), in.end());
  while (std::fabs(c.back()) <= kPolyTolerance * m) c.pop_back();
  if (c.size() <= 1) return {};
  const long double lead = c.back();
  for (long double& v : c) v /= lead;
  long double bound = 0.0L;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) bound = std::max(bound, std::fabs(c[i]));
  bound += 1.0L;

  const std::vector<long double> r = roots_in(c, -bound, bound);
  std::vector<double> out;
  for (long double x : r) {
    const double v = static_cast<double>(x);
    if (!out.empty() && std::fabs(v - out.back()) <= 1e-10 * std::max(1.0, std::fabs(v))) continue;
    out.push_back(v);
  }
  return out;
}

std::vector<double> real_roots(const Poly& f, int var) { return real_roots(f.as_univariate(var)); }

}  // namespace latpack
