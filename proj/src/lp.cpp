#include "latpack/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace latpack {

void LPProblem::add_eq(std::vector<double> row, double rhs) {
  row.resize(static_cast<std::size_t>(num_vars), 0.0);
  eq_rows.push_back(std::move(row));
  eq_rhs.push_back(rhs);
}

void LPProblem::add_le(std::vector<double> row, double rhs) { add_le_indexed(std::move(row), rhs); }

void LPProblem::add_ge(std::vector<double> row, double rhs) {
  for (double& v : row) v = -v;
  add_le_indexed(std::move(row), -rhs);
}

int LPProblem::add_le_indexed(std::vector<double> row, double rhs) {
  row.resize(static_cast<std::size_t>(num_vars), 0.0);
  le_rows.push_back(std::move(row));
  le_rhs.push_back(rhs);
  return static_cast<int>(le_rows.size()) - 1;
}

namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-12;
constexpr int kMaxIterations = 100000;

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

// Dense tableau for: minimize c·y subject to A y = b, y ≥ 0, b ≥ 0.
class Tableau {
 public:
  Tableau(int m, int n) : m_(m), n_(n), t_(static_cast<std::size_t>(m * (n + 1)), 0.0), basis_(static_cast<std::size_t>(m), -1) {}

  double& at(int r, int c) { return t_[static_cast<std::size_t>(r * (n_ + 1) + c)]; }
  double at(int r, int c) const { return t_[static_cast<std::size_t>(r * (n_ + 1) + c)]; }
  double& rhs(int r) { return at(r, n_); }
  int& basis(int r) { return basis_[static_cast<std::size_t>(r)]; }
  int rows() const { return m_; }
  int cols() const { return n_; }

  // Runs Bland's rule simplex minimizing `cost` restricted to columns < `active_cols`.
  Status minimize(const std::vector<double>& cost, int active_cols) {
    std::vector<double> red(static_cast<std::size_t>(n_));
    for (int it = 0; it < kMaxIterations; ++it) {
      // Reduced costs c_j - c_B B^{-1} A_j (tableau already holds B^{-1} A).
      int enter = -1;
      for (int j = 0; j < active_cols; ++j) {
        double r = cost[static_cast<std::size_t>(j)];
        for (int i = 0; i < m_; ++i) r -= cost[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] * at(i, j);
        if (r < -kCostEps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return Status::Optimal;
      int leave = -1;
      double best = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (a <= kPivotEps) continue;
        const double ratio = rhs(i) / a;
        if (leave < 0 || ratio < best - 1e-14 * std::max(1.0, std::fabs(best)) ||
            (std::fabs(ratio - best) <= 1e-14 * std::max(1.0, std::fabs(best)) &&
             basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return Status::Unbounded;
      pivot(leave, enter);
    }
    return Status::IterationLimit;
  }

  void pivot(int r, int c) {
    const double p = at(r, c);
    for (int j = 0; j <= n_; ++j) at(r, j) /= p;
    at(r, c) = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (int j = 0; j <= n_; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
      if (rhs(i) < 0.0 && rhs(i) > -1e-13) rhs(i) = 0.0;
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

  std::vector<double> solution() const {
    std::vector<double> y(static_cast<std::size_t>(n_), 0.0);
    for (int i = 0; i < m_; ++i) y[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] = at(i, n_);
    return y;
  }

 private:
  int m_, n_;
  std::vector<double> t_;
  std::vector<int> basis_;
};

struct Normalized {
  std::vector<std::vector<double>> eq, le;
  std::vector<double> eq_b, le_b;
  bool trivially_infeasible = false;
};

double row_norm(const std::vector<double>& r) { return std::sqrt(std::inner_product(r.begin(), r.end(), r.begin(), 0.0)); }

// Scales rows to unit norm; zero rows are checked on the spot and dropped.
Normalized normalize(const LPProblem& p) {
  Normalized out;
  for (std::size_t i = 0; i < p.eq_rows.size(); ++i) {
    const double n = row_norm(p.eq_rows[i]);
    if (n <= 1e-300) {
      if (std::fabs(p.eq_rhs[i]) > kLpTolerance) out.trivially_infeasible = true;
      continue;
    }
    std::vector<double> r = p.eq_rows[i];
    for (double& v : r) v /= n;
    out.eq.push_back(std::move(r));
    out.eq_b.push_back(p.eq_rhs[i] / n);
  }
  for (std::size_t i = 0; i < p.le_rows.size(); ++i) {
    const double n = row_norm(p.le_rows[i]);
    if (n <= 1e-300) {
      if (p.le_rhs[i] < -kLpTolerance) out.trivially_infeasible = true;
      out.le.emplace_back();  // keep indices aligned with the caller's rows
      out.le_b.push_back(1.0);
      continue;
    }
    std::vector<double> r = p.le_rows[i];
    for (double& v : r) v /= n;
    out.le.push_back(std::move(r));
    out.le_b.push_back(p.le_rhs[i] / n);
  }
  return out;
}

struct Outcome {
  Status status = Status::Infeasible;
  std::vector<double> x;
};

// Core driver over normalized rows. Extra variable `t` (index nvar) is used
// when `strict` is non-empty: strict rows get +t, t ≤ 1, objective max t.
Outcome run(const Normalized& nz, int nvar, const std::vector<double>* obj, const std::vector<int>& strict) {
  const bool use_t = !strict.empty();
  const int nfree = nvar + (use_t ? 1 : 0);  // t is nonnegative, not split
  std::vector<int> le_idx;
  for (std::size_t i = 0; i < nz.le.size(); ++i)
    if (!nz.le[i].empty()) le_idx.push_back(static_cast<int>(i));
  const int n_eq = static_cast<int>(nz.eq.size());
  const int n_le = static_cast<int>(le_idx.size()) + (use_t ? 1 : 0);
  const int m = n_eq + n_le;

  std::vector<bool> is_strict(nz.le.size(), false);
  for (int s : strict)
    if (s >= 0 && static_cast<std::size_t>(s) < nz.le.size()) is_strict[static_cast<std::size_t>(s)] = true;

  // Columns: [p (nvar)] [q (nvar)] [t?] [slacks (n_le)] [artificials (m)]
  const int col_t = 2 * nvar;
  const int col_slack = 2 * nvar + (use_t ? 1 : 0);
  const int col_art = col_slack + n_le;
  const int ncols = col_art + m;
  (void)nfree;

  Tableau tab(m, ncols);
  std::vector<int> row_slack(static_cast<std::size_t>(m), -1);
  auto fill = [&](int r, const std::vector<double>& coef, double b, double tcoef, int slack_col) {
    double sign = b < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < nvar; ++j) {
      tab.at(r, j) = sign * coef[static_cast<std::size_t>(j)];
      tab.at(r, nvar + j) = -sign * coef[static_cast<std::size_t>(j)];
    }
    if (use_t) tab.at(r, col_t) = sign * tcoef;
    if (slack_col >= 0) {
      tab.at(r, slack_col) = sign;
      if (sign > 0) row_slack[static_cast<std::size_t>(r)] = slack_col;
    }
    tab.rhs(r) = sign * b;
  };
  int r = 0;
  for (int i = 0; i < n_eq; ++i, ++r) fill(r, nz.eq[static_cast<std::size_t>(i)], nz.eq_b[static_cast<std::size_t>(i)], 0.0, -1);
  for (std::size_t k = 0; k < le_idx.size(); ++k, ++r) {
    const int i = le_idx[k];
    fill(r, nz.le[static_cast<std::size_t>(i)], nz.le_b[static_cast<std::size_t>(i)],
         is_strict[static_cast<std::size_t>(i)] ? 1.0 : 0.0, col_slack + static_cast<int>(k));
  }
  if (use_t) {
    std::vector<double> zero(static_cast<std::size_t>(nvar), 0.0);
    fill(r, zero, 1.0, 1.0, col_slack + static_cast<int>(le_idx.size()));
    ++r;
  }

  // Initial basis: slack where its sign allows, otherwise an artificial.
  std::vector<double> cost1(static_cast<std::size_t>(ncols), 0.0);
  bool need_phase1 = false;
  for (int i = 0; i < m; ++i) {
    if (row_slack[static_cast<std::size_t>(i)] >= 0) {
      tab.basis(i) = row_slack[static_cast<std::size_t>(i)];
    } else {
      tab.at(i, col_art + i) = 1.0;
      tab.basis(i) = col_art + i;
      cost1[static_cast<std::size_t>(col_art + i)] = 1.0;
      need_phase1 = true;
    }
  }

  Outcome out;
  if (need_phase1) {
    const Status s = tab.minimize(cost1, ncols);
    if (s != Status::Optimal) return out;
    double infeas = 0.0;
    for (int i = 0; i < m; ++i)
      if (tab.basis(i) >= col_art) infeas += tab.rhs(i);
    if (infeas > kLpTolerance * std::max(1, m)) return out;
    // Drive remaining zero-level artificials out of the basis.
    for (int i = 0; i < m; ++i) {
      if (tab.basis(i) < col_art) continue;
      int best = -1;
      double bv = kPivotEps;
      for (int j = 0; j < col_art; ++j)
        if (std::fabs(tab.at(i, j)) > bv) {
          bv = std::fabs(tab.at(i, j));
          best = j;
        }
      if (best >= 0) tab.pivot(i, best);
    }
  }

  if (obj != nullptr || use_t) {
    std::vector<double> cost2(static_cast<std::size_t>(ncols), 0.0);
    if (use_t) {
      cost2[static_cast<std::size_t>(col_t)] = -1.0;
    } else {
      for (int j = 0; j < nvar; ++j) {
        cost2[static_cast<std::size_t>(j)] = -(*obj)[static_cast<std::size_t>(j)];
        cost2[static_cast<std::size_t>(nvar + j)] = (*obj)[static_cast<std::size_t>(j)];
      }
    }
    // Redundant rows may keep an artificial basic at level zero; it must stay there.
    for (int i = 0; i < m; ++i)
      if (tab.basis(i) >= col_art) cost2[static_cast<std::size_t>(tab.basis(i))] = 0.0;
    const Status s = tab.minimize(cost2, col_art);
    if (s != Status::Optimal) {
      out.status = s;
      return out;
    }
  }

  const std::vector<double> y = tab.solution();
  out.x.assign(static_cast<std::size_t>(nvar + (use_t ? 1 : 0)), 0.0);
  for (int j = 0; j < nvar; ++j)
    out.x[static_cast<std::size_t>(j)] = y[static_cast<std::size_t>(j)] - y[static_cast<std::size_t>(nvar + j)];
  if (use_t) out.x[static_cast<std::size_t>(nvar)] = y[static_cast<std::size_t>(col_t)];
  out.status = Status::Optimal;
  return out;
}

bool satisfies(const Normalized& nz, const std::vector<double>& x, double tol) {
  for (std::size_t i = 0; i < nz.eq.size(); ++i) {
    const double v = std::inner_product(nz.eq[i].begin(), nz.eq[i].end(), x.begin(), 0.0) - nz.eq_b[i];
    if (std::fabs(v) > tol * std::max(1.0, std::fabs(nz.eq_b[i]))) return false;
  }
  for (std::size_t i = 0; i < nz.le.size(); ++i) {
    if (nz.le[i].empty()) continue;
    const double v = std::inner_product(nz.le[i].begin(), nz.le[i].end(), x.begin(), 0.0) - nz.le_b[i];
    if (v > tol * std::max(1.0, std::fabs(nz.le_b[i]))) return false;
  }
  return true;
}

}  // namespace

std::optional<std::vector<double>> lp_feasible(const LPProblem& p) {
  const Normalized nz = normalize(p);
  if (nz.trivially_infeasible) return std::nullopt;
  Outcome o = run(nz, p.num_vars, nullptr, {});
  if (o.status != Status::Optimal) return std::nullopt;
  if (!satisfies(nz, o.x, 10 * kLpTolerance)) return std::nullopt;
  return o.x;
}

std::optional<StrictPoint> lp_feasible_strict(const LPProblem& p, const std::vector<int>& strict_rows,
                                              double eps_strict) {
  if (strict_rows.empty()) {
    auto x = lp_feasible(p);
    if (!x) return std::nullopt;
    return StrictPoint{*x, 1.0};
  }
  const Normalized nz = normalize(p);
  if (nz.trivially_infeasible) return std::nullopt;
  // A strict row with a zero coefficient vector holds iff 0 < rhs.
  for (int s : strict_rows)
    if (s >= 0 && static_cast<std::size_t>(s) < p.le_rows.size() && nz.le[static_cast<std::size_t>(s)].empty() &&
        !(p.le_rhs[static_cast<std::size_t>(s)] >= eps_strict))
      return std::nullopt;
  Outcome o = run(nz, p.num_vars, nullptr, strict_rows);
  if (o.status != Status::Optimal) return std::nullopt;
  const double t = o.x.back();
  if (t < eps_strict) return std::nullopt;
  o.x.pop_back();
  if (!satisfies(nz, o.x, 10 * kLpTolerance)) return std::nullopt;
  return StrictPoint{o.x, t};
}

std::optional<std::vector<double>> lp_maximize(const LPProblem& p, const std::vector<double>& obj) {
  const Normalized nz = normalize(p);
  if (nz.trivially_infeasible) return std::nullopt;
  Outcome o = run(nz, p.num_vars, &obj, {});
  if (o.status != Status::Optimal) return std::nullopt;
  return o.x;
}

}  // namespace latpack
