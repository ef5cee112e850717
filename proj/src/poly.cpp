#include "latpack/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace latpack {

void Poly::reshape(const std::array<int, 3>& deg) {
  deg_ = deg;
  if (deg_[0] < 0 || deg_[1] < 0 || deg_[2] < 0) {
    deg_ = {-1, -1, -1};
    c_.clear();
    return;
  }
  c_.assign(static_cast<std::size_t>((deg_[0] + 1) * (deg_[1] + 1) * (deg_[2] + 1)), 0.0);
}

template <class F>
void Poly::for_each(F&& f) const {
  if (is_zero()) return;
  for (int i = 0; i <= deg_[0]; ++i)
    for (int j = 0; j <= deg_[1]; ++j)
      for (int k = 0; k <= deg_[2]; ++k) {
        const double c = c_[index(i, j, k)];
        if (c != 0.0) f(Exp{i, j, k}, c);
      }
}

Poly Poly::constant(double c) {
  Poly p;
  if (c != 0.0) p.add_term({0, 0, 0}, c);
  return p;
}

Poly Poly::variable(int var) {
  Exp e{0, 0, 0};
  e[static_cast<std::size_t>(var)] = 1;
  return monomial(e, 1.0);
}

Poly Poly::monomial(const Exp& e, double c) {
  Poly p;
  p.add_term(e, c);
  return p;
}

Poly Poly::univariate(const std::vector<double>& c, int var) {
  Poly p;
  for (std::size_t i = 0; i < c.size(); ++i) {
    Exp e{0, 0, 0};
    e[static_cast<std::size_t>(var)] = static_cast<int>(i);
    p.add_term(e, c[i]);
  }
  return p.trimmed_abs(0.0);
}

int Poly::degree(int var) const { return deg_[static_cast<std::size_t>(var)]; }

int Poly::total_degree() const {
  int d = -1;
  for_each([&](const Exp& e, double) { d = std::max(d, e[0] + e[1] + e[2]); });
  return d;
}

double Poly::coeff(const Exp& e) const {
  if (is_zero()) return 0.0;
  for (std::size_t v = 0; v < 3; ++v)
    if (e[v] < 0 || e[v] > deg_[v]) return 0.0;
  return c_[index(e[0], e[1], e[2])];
}

void Poly::add_term(const Exp& e, double c) {
  if (c == 0.0) return;
  if (is_zero() || e[0] > deg_[0] || e[1] > deg_[1] || e[2] > deg_[2]) {
    Poly grown;
    std::array<int, 3> nd{};
    for (std::size_t v = 0; v < 3; ++v) nd[v] = std::max(is_zero() ? 0 : deg_[v], e[v]);
    grown.reshape(nd);
    for_each([&](const Exp& f, double x) { grown.c_[grown.index(f[0], f[1], f[2])] = x; });
    *this = std::move(grown);
  }
  double& slot = c_[index(e[0], e[1], e[2])];
  slot += c;
  if (slot == 0.0) *this = trimmed_abs(0.0);
}

double Poly::max_abs() const {
  double m = 0.0;
  for (double c : c_) m = std::max(m, std::fabs(c));
  return m;
}

bool Poly::is_constant() const { return is_zero() || (deg_[0] == 0 && deg_[1] == 0 && deg_[2] == 0); }

int Poly::num_vars_used() const { return (uses(0) ? 1 : 0) + (uses(1) ? 1 : 0) + (uses(2) ? 1 : 0); }

Poly Poly::trimmed_abs(double tol) const {
  std::array<int, 3> nd{-1, -1, -1};
  bool any = false;
  for_each([&](const Exp& e, double c) {
    if (std::fabs(c) <= tol) return;
    any = true;
    for (std::size_t v = 0; v < 3; ++v) nd[v] = std::max(nd[v], e[v]);
  });
  Poly r;
  if (!any) return r;
  r.reshape(nd);
  for_each([&](const Exp& e, double c) {
    if (std::fabs(c) > tol) r.c_[r.index(e[0], e[1], e[2])] = c;
  });
  return r;
}

Poly Poly::trimmed(double rel) const { return trimmed_abs(rel * max_abs()); }

Poly Poly::derivative(int var) const {
  Poly r;
  for_each([&](const Exp& e, double c) {
    const int p = e[static_cast<std::size_t>(var)];
    if (p == 0) return;
    Exp f = e;
    f[static_cast<std::size_t>(var)] = p - 1;
    r.add_term(f, c * p);
  });
  return r;
}

double Poly::eval(const std::array<double, 3>& x) const {
  if (is_zero()) return 0.0;
  // Nested Horner, innermost in x2.
  long double s0 = 0.0L;
  for (int i = deg_[0]; i >= 0; --i) {
    long double s1 = 0.0L;
    for (int j = deg_[1]; j >= 0; --j) {
      long double s2 = 0.0L;
      for (int k = deg_[2]; k >= 0; --k) s2 = s2 * x[2] + c_[index(i, j, k)];
      s1 = s1 * x[1] + s2;
    }
    s0 = s0 * x[0] + s1;
  }
  return static_cast<double>(s0);
}

Poly Poly::abs_coeffs() const {
  Poly r = *this;
  for (double& c : r.c_) c = std::fabs(c);
  return r;
}

std::vector<Poly> Poly::coefficients_in(int var) const {
  std::vector<Poly> out(static_cast<std::size_t>(std::max(degree(var), 0) + 1));
  for_each([&](const Exp& e, double c) {
    Exp f = e;
    f[static_cast<std::size_t>(var)] = 0;
    out[static_cast<std::size_t>(e[static_cast<std::size_t>(var)])].add_term(f, c);
  });
  return out;
}

Poly Poly::from_coefficients_in(int var, const std::vector<Poly>& c) {
  Poly r;
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i].for_each([&](const Exp& e, double x) {
      Exp f = e;
      f[static_cast<std::size_t>(var)] += static_cast<int>(i);
      r.add_term(f, x);
    });
  return r;
}

std::vector<double> Poly::as_univariate(int var) const {
  std::vector<double> out(static_cast<std::size_t>(std::max(degree(var), 0) + 1), 0.0);
  for_each([&](const Exp& e, double c) { out[static_cast<std::size_t>(e[static_cast<std::size_t>(var)])] += c; });
  return out;
}

Poly Poly::compose(const std::array<Poly, 3>& values) const {
  if (is_zero()) return {};
  std::array<std::vector<Poly>, 3> pw;
  for (std::size_t v = 0; v < 3; ++v) {
    pw[v].push_back(constant(1.0));
    for (int k = 1; k <= deg_[v]; ++k) pw[v].push_back(pw[v].back() * values[v]);
  }
  Poly r;
  for_each([&](const Exp& e, double c) {
    r += pw[0][static_cast<std::size_t>(e[0])] * pw[1][static_cast<std::size_t>(e[1])] *
         pw[2][static_cast<std::size_t>(e[2])] * c;
  });
  return r;
}

Poly Poly::substitute(int var, const Poly& value) const {
  std::array<Poly, 3> vals{variable(0), variable(1), variable(2)};
  vals[static_cast<std::size_t>(var)] = value;
  return compose(vals);
}

Poly Poly::renamed(const std::array<int, 3>& perm) const {
  Poly r;
  for_each([&](const Exp& e, double c) {
    Exp f{0, 0, 0};
    for (std::size_t v = 0; v < 3; ++v) f[static_cast<std::size_t>(perm[v])] += e[v];
    r.add_term(f, c);
  });
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  o.for_each([&](const Exp& e, double c) { r.add_term(e, c); });
  return r.trimmed_abs(0.0);
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  o.for_each([&](const Exp& e, double c) { r.add_term(e, -c); });
  return r.trimmed_abs(0.0);
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return {};
  Poly r;
  r.reshape({deg_[0] + o.deg_[0], deg_[1] + o.deg_[1], deg_[2] + o.deg_[2]});
  for_each([&](const Exp& e, double c) {
    o.for_each([&](const Exp& f, double d) { r.c_[r.index(e[0] + f[0], e[1] + f[1], e[2] + f[2])] += c * d; });
  });
  return r.trimmed_abs(0.0);
}

Poly Poly::operator*(double s) const {
  if (s == 0.0) return {};
  Poly r = *this;
  for (double& c : r.c_) c *= s;
  return r;
}

Poly Poly::pow(int n) const {
  Poly r = constant(1.0);
  for (int i = 0; i < n; ++i) r *= *this;
  return r;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  static const char* names[3] = {"x", "y", "z"};
  std::vector<std::pair<Exp, double>> terms;
  for_each([&](const Exp& e, double c) { terms.emplace_back(e, c); });
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    const int da = a.first[0] + a.first[1] + a.first[2];
    const int db = b.first[0] + b.first[1] + b.first[2];
    return da != db ? da > db : a.first > b.first;
  });
  std::ostringstream os;
  os.precision(10);
  bool first = true;
  for (const auto& [e, c] : terms) {
    const bool unit = e[0] + e[1] + e[2] > 0 && std::fabs(std::fabs(c) - 1.0) < 1e-15;
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (!unit) os << std::fabs(c);
    bool need_star = !unit;
    for (std::size_t v = 0; v < 3; ++v) {
      if (e[v] == 0) continue;
      if (need_star) os << '*';
      os << names[v];
      if (e[v] > 1) os << '^' << e[v];
      need_star = true;
    }
  }
  return os.str();
}

Poly LinearPoly::to_poly() const {
  Poly p = Poly::constant(c0);
  for (int v = 0; v < 3; ++v)
    if (a[static_cast<std::size_t>(v)] != 0.0) p += Poly::variable(v) * a[static_cast<std::size_t>(v)];
  return p;
}

int LinearPoly::pivot() const {
  int best = 0;
  for (int v = 1; v < 3; ++v)
    if (std::fabs(a[static_cast<std::size_t>(v)]) > std::fabs(a[static_cast<std::size_t>(best)])) best = v;
  return best;
}

LinearPoly LinearPoly::normalized() const {
  const double n = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
  const double s = (a[static_cast<std::size_t>(pivot())] < 0 ? -1.0 : 1.0) / n;
  return {c0 * s, {a[0] * s, a[1] * s, a[2] * s}};
}

double LinearPoly::similarity(const LinearPoly& o) const {
  const double d = c0 * o.c0 + a[0] * o.a[0] + a[1] * o.a[1] + a[2] * o.a[2];
  const double n1 = std::sqrt(c0 * c0 + a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
  const double n2 = std::sqrt(o.c0 * o.c0 + o.a[0] * o.a[0] + o.a[1] * o.a[1] + o.a[2] * o.a[2]);
  return std::fabs(d) / (n1 * n2);
}

Vec3 AffineSubspace::point(const std::vector<double>& t) const {
  Vec3 p = base;
  for (std::size_t i = 0; i < dirs.size() && i < t.size(); ++i) p += dirs[i] * t[i];
  return p;
}

double AffineSubspace::distance(const Vec3& x) const {
  Vec3 d = x - base;
  for (const Vec3& u : dirs) d -= u * dot(d, u);
  return d.norm();
}

bool AffineSubspace::contains(const AffineSubspace& o, double tol) const {
  if (o.dim() > dim()) return false;
  if (distance(o.base) > tol) return false;
  for (const Vec3& u : o.dirs) {
    Vec3 r = u;
    for (const Vec3& w : dirs) r -= w * dot(r, w);
    if (r.norm() > 1e-9) return false;
  }
  return true;
}

void orthonormalize(std::vector<Vec3>& dirs, double tol) {
  std::vector<Vec3> out;
  for (Vec3 v : dirs) {
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec3& w : out) v -= w * dot(v, w);
    const double n = v.norm();
    if (n > tol) out.push_back(v / n);
  }
  dirs = std::move(out);
}

}  // namespace latpack
