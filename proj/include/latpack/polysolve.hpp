#pragma once

#include <optional>
#include <vector>

#include "latpack/poly.hpp"

namespace latpack {

/// Sorted real roots of Σ c[i]·x^i, multiplicities collapsed. Throws ZeroPolynomial.
std::vector<double> real_roots(const std::vector<double>& c);
std::vector<double> real_roots(const Poly& f, int var);

/// Sylvester resultant of f and g with respect to `var`. If one of them is
/// free of `var`, that polynomial is returned. Throws BothConstantInVar.
Poly resultant(const Poly& f, const Poly& g, int var);

/// Relative size of a resultant compared to the scale of its inputs.
bool resultant_vanishes(const Poly& res, const Poly& f, const Poly& g, int var, double rel = kZeroResultant);

/// f / l when l divides f within the factor tolerance.
std::optional<Poly> divide_by_linear(const Poly& f, const LinearPoly& l);

struct LinearFactorization {
  std::vector<LinearPoly> factors;  // with multiplicity
  Poly remainder;
};

/// All real linear factors of f, found per pivot variable from root samples.
LinearFactorization linear_factors(const Poly& f);

/// Linear factors shared by every nonzero polynomial in fs, one per line.
std::vector<LinearPoly> common_linear_factors(const std::vector<Poly>& fs);

/// f / g by coefficient comparison in `var`; g's leading coefficient in `var`
/// must be a nonzero constant (PreconditionViolated otherwise).
std::optional<Poly> try_divide(const Poly& f, const Poly& g, int var);
/// Picks the first variable in which g has positive degree and constant leading coefficient.
std::optional<Poly> try_divide(const Poly& f, const Poly& g);

/// Affine components of a conic q(x0, x1) (lines and isolated points).
std::vector<AffineSubspace> conic_components(const Poly& q);

/// Superset of the isolated affine subspaces of V(f), f in x0, x1 of degree ≤ 4.
std::vector<AffineSubspace> bivariate_isolated(const Poly& f);

/// Superset of the isolated affine subspaces of V(f, g), deg f ≤ 4, deg g ≤ 3.
std::vector<AffineSubspace> bivariate_pair_isolated(const Poly& f, const Poly& g);

struct CriticalSet {
  bool whole_space = false;  // ∇p ≡ 0
  std::vector<AffineSubspace> subspaces;
};

/// Finitely many affine subspaces of R^nvars covering every affine component
/// of {∇p = 0}; p has total degree ≤ 3 and uses only the first nvars variables.
CriticalSet gradient_critical_subspaces(const Poly& p, int nvars = 3);

}  // namespace latpack
