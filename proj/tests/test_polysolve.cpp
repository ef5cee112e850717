#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "latpack/error.hpp"
#include "latpack/polysolve.hpp"

using namespace latpack;

namespace {

const Poly X = Poly::variable(0);
const Poly Y = Poly::variable(1);
const Poly Z = Poly::variable(2);
Poly C(double c) { return Poly::constant(c); }

bool same_up_to_scale(const Poly& a, const Poly& b, double tol = 1e-8) {
  // a = s·b for some s ≠ 0.
  const double sa = a.max_abs(), sb = b.max_abs();
  if (sa == 0 || sb == 0) return sa == sb;
  const Poly d1 = a * (1 / sa) - b * (1 / sb);
  const Poly d2 = a * (1 / sa) + b * (1 / sb);
  return d1.max_abs() < tol || d2.max_abs() < tol;
}

bool has_line(const std::vector<LinearPoly>& fs, const Poly& l) {
  for (const auto& f : fs)
    if (same_up_to_scale(f.to_poly(), l)) return true;
  return false;
}

bool covers_point(const std::vector<AffineSubspace>& s, const Vec3& p, double tol = 1e-6) {
  for (const auto& a : s)
    if (a.distance(p) < tol) return true;
  return false;
}

int count_dim(const std::vector<AffineSubspace>& s, int d) {
  return static_cast<int>(std::count_if(s.begin(), s.end(), [&](const AffineSubspace& a) { return a.dim() == d; }));
}

Poly random_linear(std::mt19937& rng, int nvars) {
  std::uniform_int_distribution<int> c(-3, 3);
  Poly l = C(c(rng));
  bool any = false;
  for (int v = 0; v < nvars; ++v) {
    int a = c(rng);
    if (v == nvars - 1 && !any && a == 0) a = 1;
    any = any || a != 0;
    l += Poly::variable(v) * a;
  }
  return l;
}

Poly random_poly(std::mt19937& rng, int nvars, int deg) {
  std::uniform_real_distribution<double> u(-2, 2);
  Poly p;
  for (int i = 0; i <= deg; ++i)
    for (int j = 0; j <= (nvars > 1 ? deg - i : 0); ++j)
      for (int k = 0; k <= (nvars > 2 ? deg - i - j : 0); ++k) p.add_term({i, j, k}, u(rng));
  return p;
}

}  // namespace

TEST_CASE("real_roots: basic polynomials") {
  auto r = real_roots({-1.0, 0.0, 1.0});
  REQUIRE(r.size() == 2);
  CHECK(r[0] == doctest::Approx(-1.0));
  CHECK(r[1] == doctest::Approx(1.0));
  CHECK(real_roots({1.0, 0.0, 1.0}).empty());
  r = real_roots({-1.0, 1.0, 1.0, 1.0});
  REQUIRE(r.size() == 1);
  CHECK(r[0] == doctest::Approx(0.5436890126920764).epsilon(1e-12));
  CHECK_THROWS_AS(real_roots({0.0, 0.0}), ZeroPolynomial);
}

TEST_CASE("real_roots: double roots and clustered roots") {
  // (x-1)^2 (x+2)
  auto r = real_roots({2.0, -3.0, 0.0, 1.0});
  REQUIRE(r.size() == 2);
  CHECK(r[0] == doctest::Approx(-2.0));
  CHECK(r[1] == doctest::Approx(1.0).epsilon(1e-7));
  // (x-0.1)(x-0.1001)(x+5)
  const Poly p = (X - C(0.1)) * (X - C(0.1001)) * (X + C(5));
  r = real_roots(p, 0);
  REQUIRE(r.size() == 3);
  CHECK(r[1] == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(r[2] == doctest::Approx(0.1001).epsilon(1e-9));
}

TEST_CASE("real_roots: random products of linear factors recover every root") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-5, 5);
  std::uniform_int_distribution<int> dn(1, 6);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = dn(rng);
    std::vector<double> roots;
    Poly p = C(1);
    for (int i = 0; i < n; ++i) {
      roots.push_back(u(rng));
      p = p * (X - C(roots.back()));
    }
    std::sort(roots.begin(), roots.end());
    const auto r = real_roots(p, 0);
    for (double x : roots) {
      const bool found = std::any_of(r.begin(), r.end(), [&](double y) { return std::fabs(x - y) < 1e-5; });
      CHECK(found);
    }
    for (double y : r) CHECK(std::fabs(p.eval(Vec3{y, 0, 0})) < 1e-6 * std::pow(6.0, n));
  }
}

TEST_CASE("resultant: worked examples") {
  for (double a : {-1.5, 0.0, 2.0})
    for (double b : {-3.0, 0.5, 2.0}) {
      const Poly r = resultant(X - C(a), X - C(b), 0);
      CHECK(r.is_constant());
      CHECK(std::fabs(r.coeff(0, 0, 0)) == doctest::Approx(std::fabs(a - b)));
    }
  const Poly r = resultant(X * X + Y * Y - C(1), X - Y, 0);
  CHECK(same_up_to_scale(r, Y * Y * 2 - C(1)));
  const Poly f = X * X * Y + X - Y * Y + C(3);
  CHECK(resultant_vanishes(resultant(f, f, 0), f, f, 0));
  CHECK_THROWS_AS(resultant(Y, Y * Y, 0), BothConstantInVar);
  CHECK(same_up_to_scale(resultant(Y + C(1), X * X, 0), Y + C(1)));
}

TEST_CASE("resultant: specialization property on random pairs") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  std::uniform_int_distribution<int> dd(1, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const Poly f = random_poly(rng, 2, dd(rng));
    const Poly g = random_poly(rng, 2, dd(rng));
    if (f.degree(0) < 1 || g.degree(0) < 1) continue;
    const Poly r = resultant(f, g, 0);
    const double y0 = u(rng);
    const std::vector<double> fy = f.substitute(1, C(y0)).as_univariate(0);
    const std::vector<double> gy = g.substitute(1, C(y0)).as_univariate(0);
    // The leading coefficients stay nonzero almost surely; compare with the univariate resultant.
    const Poly ry = resultant(Poly::univariate(fy), Poly::univariate(gy), 0);
    const double val = r.eval(Vec3{0, y0, 0});
    CHECK(std::fabs(val - ry.coeff(0, 0, 0)) <= 1e-7 * std::max(1.0, std::fabs(val)));
  }
}

TEST_CASE("divide_by_linear: exact quotients and non-factors") {
  const LinearPoly xy{0.0, {1.0, -1.0, 0.0}};
  auto q = divide_by_linear(X * X - Y * Y, xy);
  REQUIRE(q);
  CHECK(same_up_to_scale(*q, X + Y));
  CHECK((*q - (X + Y)).max_abs() < 1e-12);

  const Poly h = X * Y + Z * Z - C(2);
  const LinearPoly l{1.0, {2.0, 0.0, -1.0}};
  q = divide_by_linear(l.to_poly() * h, l);
  REQUIRE(q);
  CHECK((*q - h).max_abs() < 1e-10);
  CHECK_FALSE(divide_by_linear(X * X + Y * Y + C(1), xy));
}

TEST_CASE("linear_factors: worked examples") {
  auto f = linear_factors(X * X - X * Y - Y * Y * 2 - X + Y * 2);
  REQUIRE(f.factors.size() == 2);
  CHECK(has_line(f.factors, X + Y - C(1)));
  CHECK(has_line(f.factors, X - Y * 2));

  f = linear_factors(X * X + Y * Y + C(1));
  CHECK(f.factors.empty());

  f = linear_factors((X - C(1)) * (X - C(1)) * (Y + C(2)));
  REQUIRE(f.factors.size() == 3);
  int xs = 0;
  for (const auto& l : f.factors) xs += same_up_to_scale(l.to_poly(), X - C(1)) ? 1 : 0;
  CHECK(xs == 2);
  CHECK(has_line(f.factors, Y + C(2)));
}

TEST_CASE("linear_factors: planted factors are found and multiply back") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> nf(1, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const int nvars = 2 + trial % 2;
    const int n = nf(rng);
    std::vector<Poly> planted;
    Poly p = C(1);
    for (int i = 0; i < n; ++i) {
      planted.push_back(random_linear(rng, nvars));
      p = p * planted.back();
    }
    // An irreducible quadratic cofactor (sum of squares plus one) on some trials.
    if (trial % 3 == 0) p = p * (X * X + Y * Y + C(1));
    const auto f = linear_factors(p);
    Poly back = f.remainder;
    for (const auto& l : f.factors) back = back * l.to_poly();
    CHECK((back - p).max_abs() <= 1e-7 * p.max_abs());
    for (const Poly& l : planted)
      if (l.total_degree() == 1) CHECK(has_line(f.factors, l));
  }
}

TEST_CASE("common_linear_factors: worked examples") {
  const auto c = common_linear_factors({X * X - Y * Y, X * X + X * Y});
  REQUIRE(c.size() == 1);
  CHECK(same_up_to_scale(c[0].to_poly(), X + Y));
  CHECK(common_linear_factors({X * X + C(1), Y * Y + C(1)}).empty());
}

TEST_CASE("try_divide: worked examples") {
  const Poly g = X * X + Y;
  const Poly h = X * X - Y + C(1);
  auto q = try_divide(g * h, g);
  REQUIRE(q);
  CHECK((*q - h).max_abs() < 1e-10);
  CHECK_FALSE(try_divide(X.pow(4), X * X + C(1)));
  q = try_divide(g, g);
  REQUIRE(q);
  CHECK((*q - C(1)).max_abs() < 1e-12);
  CHECK_THROWS_AS(try_divide(X * Y, X * Y, 0), PreconditionViolated);
}

TEST_CASE("conic_components: worked examples") {
  CHECK(conic_components(X * X + Y * Y - C(1)).empty());
  auto c = conic_components(X * X + Y * Y);
  REQUIRE(c.size() == 1);
  CHECK(c[0].dim() == 0);
  CHECK(c[0].base.norm() < 1e-9);
  c = conic_components(X * Y);
  REQUIRE(c.size() == 2);
  CHECK(count_dim(c, 1) == 2);
  CHECK(covers_point(c, {0, 5, 0}));
  CHECK(covers_point(c, {-3, 0, 0}));
  // Shifted definite form with a single real point at (1, -2).
  c = conic_components((X - C(1)) * (X - C(1)) + (X + Y + C(1)) * (X + Y + C(1)));
  REQUIRE(c.size() == 1);
  CHECK(covers_point(c, {1, -2, 0}));
}

TEST_CASE("bivariate_isolated: worked examples") {
  const Poly circle = X * X + Y * Y - C(1);
  CHECK(bivariate_isolated(circle * circle).empty());
  auto s = bivariate_isolated(X * X + Y * Y);
  REQUIRE(s.size() == 1);
  CHECK(covers_point(s, {0, 0, 0}));
  s = bivariate_isolated((X - Y) * (X * X + Y * Y + C(1)));
  REQUIRE(s.size() == 1);
  CHECK(s[0].dim() == 1);
  CHECK(covers_point(s, {2, 2, 0}));
}

TEST_CASE("bivariate_isolated: isolated points of sums of squares") {
  // (x^2 - 1)^2 + (y - 2)^2 vanishes exactly at (±1, 2).
  const Poly f = (X * X - C(1)) * (X * X - C(1)) + (Y - C(2)) * (Y - C(2));
  const auto s = bivariate_isolated(f);
  CHECK(covers_point(s, {1, 2, 0}));
  CHECK(covers_point(s, {-1, 2, 0}));
}

TEST_CASE("bivariate_pair_isolated: worked examples") {
  auto s = bivariate_pair_isolated(X * X + Y * Y - C(2), X - Y);
  REQUIRE(count_dim(s, 0) == 2);
  CHECK(covers_point(s, {1, 1, 0}));
  CHECK(covers_point(s, {-1, -1, 0}));
  s = bivariate_pair_isolated(X * Y, X * Y);
  CHECK(count_dim(s, 1) == 2);
  CHECK(covers_point(s, {0, 3, 0}));
  CHECK(covers_point(s, {3, 0, 0}));
  CHECK(bivariate_pair_isolated(X * X + Y * Y + C(1), X + Y).empty());
}

TEST_CASE("bivariate_pair_isolated: random intersections contain every common root") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 150; ++trial) {
    const Vec3 p{u(rng), u(rng), 0};
    // Two curves through p.
    Poly f = random_poly(rng, 2, 2);
    Poly g = random_poly(rng, 2, 2);
    f -= C(f.eval(p));
    g -= C(g.eval(p));
    const auto s = bivariate_pair_isolated(f, g);
    CHECK(covers_point(s, p, 1e-5));
  }
}

TEST_CASE("gradient_critical_subspaces: worked examples") {
  auto cs = gradient_critical_subspaces(X * X + Y * Y + Z * Z);
  CHECK_FALSE(cs.whole_space);
  REQUIRE(cs.subspaces.size() == 1);
  CHECK(cs.subspaces[0].dim() == 0);
  CHECK(cs.subspaces[0].base.norm() < 1e-9);

  cs = gradient_critical_subspaces(X * X * X - X * 3);
  REQUIRE(cs.subspaces.size() == 2);
  CHECK(count_dim(cs.subspaces, 2) == 2);
  CHECK(covers_point(cs.subspaces, {1, 4, -7}));
  CHECK(covers_point(cs.subspaces, {-1, 0, 2}));

  cs = gradient_critical_subspaces(X * Y);
  REQUIRE(cs.subspaces.size() == 1);
  CHECK(cs.subspaces[0].dim() == 1);
  CHECK(covers_point(cs.subspaces, {0, 0, 9}));

  CHECK(gradient_critical_subspaces(C(4)).whole_space);
  CHECK_THROWS_AS(gradient_critical_subspaces(X.pow(4)), DegreeTooHigh);
}

TEST_CASE("gradient_critical_subspaces: lower-dimensional domains") {
  auto cs = gradient_critical_subspaces((X - C(1)) * (X - C(1)) + Y * Y, 2);
  REQUIRE(cs.subspaces.size() == 1);
  CHECK(covers_point(cs.subspaces, {1, 0, 0}));
  cs = gradient_critical_subspaces(X * X * X - X * 3, 1);
  CHECK(cs.subspaces.size() == 2);
  CHECK(covers_point(cs.subspaces, {1, 0, 0}));
  CHECK(covers_point(cs.subspaces, {-1, 0, 0}));
}

TEST_CASE("gradient_critical_subspaces: determinant-like cubics") {
  // det of a 3x3 matrix with linear entries: the xyz monomial and its relatives.
  auto cs = gradient_critical_subspaces(X * Y * Z);
  // Gradient (yz, xz, xy) vanishes on the three coordinate axes.
  CHECK(covers_point(cs.subspaces, {5, 0, 0}));
  CHECK(covers_point(cs.subspaces, {0, -2, 0}));
  CHECK(covers_point(cs.subspaces, {0, 0, 3}));
  cs = gradient_critical_subspaces((C(1) + X) * (C(1) + Y) * (C(1) + Z) - C(1) - X * Z);
  for (const auto& s : cs.subspaces)
    for (int v = 0; v < 3; ++v) {
      const Poly g = ((C(1) + X) * (C(1) + Y) * (C(1) + Z) - C(1) - X * Z).derivative(v);
      CHECK(std::fabs(g.eval(s.base)) < 1e-7 * std::max(1.0, g.max_abs()));
    }
}

TEST_CASE("gradient_critical_subspaces: soundness on random cubics") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const int nvars = 1 + trial % 3;
    const Poly p = random_poly(rng, nvars, 3);
    const auto cs = gradient_critical_subspaces(p, nvars);
    for (const auto& s : cs.subspaces)
      for (int sample = 0; sample < 20; ++sample) {
        Vec3 t{u(rng), u(rng), u(rng)};
        const Vec3 x = s.point({t[0] * 3, t[1] * 3, t[2] * 3});
        for (int v = 0; v < nvars; ++v) {
          const Poly g = p.derivative(v);
          double scale = 1.0;
          for (int k = 0; k < 3; ++k) scale = std::max(scale, std::fabs(x[static_cast<std::size_t>(k)]));
          CHECK(std::fabs(g.eval(x)) <= 1e-7 * p.max_abs() * scale * scale);
        }
      }
  }
}

TEST_CASE("gradient_critical_subspaces: planted minima are found") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 200; ++trial) {
    // (x-c)^T A (x-c) with A = B^T B + I, plus a cubic small enough to keep c a nondegenerate minimum.
    const Vec3 c{u(rng), u(rng), u(rng)};
    double b[3][3];
    for (auto& row : b)
      for (double& e : row) e = u(rng);
    const std::array<Poly, 3> d{X - C(c.x), Y - C(c.y), Z - C(c.z)};
    Poly p;
    for (int i = 0; i < 3; ++i) {
      Poly row = d[static_cast<std::size_t>(i)];
      for (int j = 0; j < 3; ++j) row += d[static_cast<std::size_t>(j)] * b[i][j];
      p += row * row;
    }
    p += d[0] * d[1] * d[2] * (0.05 * u(rng)) + d[0] * d[0] * d[0] * (0.05 * u(rng));
    const auto cs = gradient_critical_subspaces(p);
    CHECK(covers_point(cs.subspaces, c, 1e-6));
  }
}
