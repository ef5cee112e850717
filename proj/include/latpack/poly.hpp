#pragma once

#include <array>
#include <string>
#include <vector>

#include "latpack/geometry.hpp"

namespace latpack {

/// Relative threshold (times the largest coefficient) below which coefficients are dropped.
inline constexpr double kPolyTolerance = 1e-10;
/// Relative residual accepted when testing an exact factorization.
inline constexpr double kFactorTolerance = 1e-8;
/// Root accuracy target, relative to the evaluation scale of the polynomial.
inline constexpr double kRootTolerance = 1e-12;
/// A resultant is treated as zero below this norm relative to its inputs.
inline constexpr double kZeroResultant = 1e-8;

/// Real polynomial in at most three variables x0, x1, x2 with a dense
/// coefficient box. Univariate and bivariate polynomials simply leave the
/// trailing variables unused.
class Poly {
 public:
  using Exp = std::array<int, 3>;

  Poly() = default;
  static Poly constant(double c);
  static Poly variable(int var);
  static Poly monomial(const Exp& e, double c);
  /// Univariate polynomial Σ c[i]·var^i.
  static Poly univariate(const std::vector<double>& c, int var = 0);

  /// Exponent bound in `var`; -1 for the zero polynomial.
  int degree(int var) const;
  int total_degree() const;
  double coeff(const Exp& e) const;
  double coeff(int i, int j = 0, int k = 0) const { return coeff(Exp{i, j, k}); }
  void add_term(const Exp& e, double c);

  double max_abs() const;
  bool is_zero() const { return deg_[0] < 0; }
  bool is_constant() const;
  bool uses(int var) const { return degree(var) > 0; }
  int num_vars_used() const;

  /// Drops coefficients with |c| ≤ rel·max|c| and shrinks the box.
  Poly trimmed(double rel = kPolyTolerance) const;
  /// Drops coefficients with |c| ≤ tol.
  Poly trimmed_abs(double tol) const;
  Poly derivative(int var) const;
  double eval(const std::array<double, 3>& x) const;
  double eval(const Vec3& x) const { return eval(std::array<double, 3>{x.x, x.y, x.z}); }
  /// Same polynomial with every coefficient replaced by its absolute value.
  Poly abs_coeffs() const;

  /// f = Σ_i c_i·var^i with c_i free of var.
  std::vector<Poly> coefficients_in(int var) const;
  static Poly from_coefficients_in(int var, const std::vector<Poly>& c);
  /// Coefficients of a polynomial that uses only `var`.
  std::vector<double> as_univariate(int var) const;

  /// f(values[0], values[1], values[2]).
  Poly compose(const std::array<Poly, 3>& values) const;
  Poly substitute(int var, const Poly& value) const;
  /// Renames variable i to perm[i].
  Poly renamed(const std::array<int, 3>& perm) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(double s) const;
  Poly operator-() const { return *this * -1.0; }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly pow(int n) const;

  /// Human-readable monomial form, e.g. "2*x^2 - y*z + 1".
  std::string to_string() const;

 private:
  std::array<int, 3> deg_{-1, -1, -1};
  std::vector<double> c_;

  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>((i * (deg_[1] + 1) + j) * (deg_[2] + 1) + k);
  }
  void reshape(const std::array<int, 3>& deg);
  template <class F>
  void for_each(F&& f) const;
};

inline Poly operator*(double s, const Poly& p) { return p * s; }

/// l0 + a[0]·x0 + a[1]·x1 + a[2]·x2 with a ≠ 0.
struct LinearPoly {
  double c0 = 0.0;
  std::array<double, 3> a{};

  Poly to_poly() const;
  double eval(const std::array<double, 3>& x) const { return c0 + a[0] * x[0] + a[1] * x[1] + a[2] * x[2]; }
  /// Variable with the largest coefficient magnitude.
  int pivot() const;
  /// Scaled to unit coefficient norm with the pivot coefficient positive.
  LinearPoly normalized() const;
  /// |cos| between the full coefficient vectors (c0, a).
  double similarity(const LinearPoly& o) const;
};

/// base + span(dirs) in R^ambient; directions orthonormal.
struct AffineSubspace {
  int ambient = 3;
  Vec3 base;
  std::vector<Vec3> dirs;

  int dim() const { return static_cast<int>(dirs.size()); }
  Vec3 point(const std::vector<double>& t) const;
  /// Distance from x to the subspace.
  double distance(const Vec3& x) const;
  bool contains(const AffineSubspace& o, double tol) const;
};

/// Orthonormalizes directions in place (Gram-Schmidt); drops dependent ones.
void orthonormalize(std::vector<Vec3>& dirs, double tol = 1e-12);

}  // namespace latpack
