#pragma once

#include <optional>
#include <vector>

namespace latpack {

/// Feasibility problem over free variables λ ∈ ℝ^n: rows·λ = rhs and rows·λ ≤ rhs.
struct LPProblem {
  int num_vars = 0;
  std::vector<std::vector<double>> eq_rows;
  std::vector<double> eq_rhs;
  std::vector<std::vector<double>> le_rows;
  std::vector<double> le_rhs;

  explicit LPProblem(int n = 0) : num_vars(n) {}
  void add_eq(std::vector<double> row, double rhs);
  void add_le(std::vector<double> row, double rhs);
  void add_ge(std::vector<double> row, double rhs);
  /// Returns the index of the new row among the ≤ rows (for strict markers).
  int add_le_indexed(std::vector<double> row, double rhs);
};

/// Relative slack tolerance per normalized row.
inline constexpr double kLpTolerance = 1e-9;
/// Default slack demanded of strict rows.
inline constexpr double kStrictSlack = 1e-7;

/// A point satisfying every constraint within kLpTolerance (normalized rows), or nullopt.
std::optional<std::vector<double>> lp_feasible(const LPProblem& p);

struct StrictPoint {
  std::vector<double> x;
  double slack = 0.0;  // minimal normalized slack attained by the strict rows
};

/// Like lp_feasible, but the ≤ rows listed in `strict_rows` must hold with
/// normalized slack ≥ eps_strict. Realized by maximizing a common slack t ≤ 1.
std::optional<StrictPoint> lp_feasible_strict(const LPProblem& p, const std::vector<int>& strict_rows,
                                              double eps_strict = kStrictSlack);

/// Maximizes obj·λ over the constraints. nullopt when infeasible or unbounded.
std::optional<std::vector<double>> lp_maximize(const LPProblem& p, const std::vector<double>& obj);

}  // namespace latpack
