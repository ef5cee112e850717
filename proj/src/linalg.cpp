#include "latpack/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace latpack {

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data) m = std::max(m, std::fabs(v));
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols, rows);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) t(c, r) = (*this)(r, c);
  return t;
}

namespace {

struct Elimination {
  DenseMatrix m;               // reduced augmented matrix (row echelon, pivots normalized)
  std::vector<int> pivot_col;  // pivot column per pivot row
  int rank = 0;
};

// Gauss-Jordan with complete pivoting on the coefficient block; the last
// `aug` columns are carried along as right-hand sides.
Elimination eliminate(const DenseMatrix& a, int aug) {
  Elimination e;
  e.m = a;
  const int rows = a.rows;
  const int cols = a.cols - aug;

  double col_norm = 0.0;
  for (int c = 0; c < cols; ++c) {
    double s = 0.0;
    for (int r = 0; r < rows; ++r) s += a(r, c) * a(r, c);
    col_norm = std::max(col_norm, std::sqrt(s));
  }
  const double threshold = kPivotThreshold * std::max(col_norm, 1e-300);

  std::vector<bool> used_col(static_cast<std::size_t>(cols), false);
  int r = 0;
  while (r < rows) {
    int best_r = -1, best_c = -1;
    double best = threshold;
    for (int i = r; i < rows; ++i)
      for (int c = 0; c < cols; ++c) {
        if (used_col[static_cast<std::size_t>(c)]) continue;
        const double v = std::fabs(e.m(i, c));
        if (v > best) {
          best = v;
          best_r = i;
          best_c = c;
        }
      }
    if (best_r < 0) break;
    if (best_r != r)
      for (int c = 0; c < e.m.cols; ++c) std::swap(e.m(r, c), e.m(best_r, c));
    const double p = e.m(r, best_c);
    for (int c = 0; c < e.m.cols; ++c) e.m(r, c) /= p;
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      const double f = e.m(i, best_c);
      if (f == 0.0) continue;
      for (int c = 0; c < e.m.cols; ++c) e.m(i, c) -= f * e.m(r, c);
    }
    used_col[static_cast<std::size_t>(best_c)] = true;
    e.pivot_col.push_back(best_c);
    ++r;
  }
  e.rank = r;
  return e;
}

void orthonormalize(std::vector<std::vector<double>>& vs) {
  std::vector<std::vector<double>> out;
  for (auto v : vs) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : out) {
        const double d = std::inner_product(v.begin(), v.end(), q.begin(), 0.0);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= d * q[i];
      }
    const double n = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    if (n < 1e-14) continue;
    for (double& x : v) x /= n;
    out.push_back(std::move(v));
  }
  vs = std::move(out);
}

}  // namespace

int matrix_rank(const DenseMatrix& a) { return eliminate(a, 0).rank; }

std::optional<AffineSolutionSet> solve_affine(const LinSystem& sys) {
  const int rows = sys.a.rows;
  const int cols = sys.a.cols;
  DenseMatrix aug(rows, cols + 1);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) aug(r, c) = sys.a(r, c);
    aug(r, cols) = sys.b[static_cast<std::size_t>(r)];
  }
  const Elimination e = eliminate(aug, 1);

  AffineSolutionSet out;
  out.rank = e.rank;
  out.base.assign(static_cast<std::size_t>(cols), 0.0);
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (int r = 0; r < e.rank; ++r) {
    const int pc = e.pivot_col[static_cast<std::size_t>(r)];
    is_pivot[static_cast<std::size_t>(pc)] = true;
    out.base[static_cast<std::size_t>(pc)] = e.m(r, cols);
  }
  for (int fc = 0; fc < cols; ++fc) {
    if (is_pivot[static_cast<std::size_t>(fc)]) continue;
    std::vector<double> d(static_cast<std::size_t>(cols), 0.0);
    d[static_cast<std::size_t>(fc)] = 1.0;
    for (int r = 0; r < e.rank; ++r) d[static_cast<std::size_t>(e.pivot_col[static_cast<std::size_t>(r)])] = -e.m(r, fc);
    out.directions.push_back(std::move(d));
  }
  orthonormalize(out.directions);

  // Minimum-norm base point: project the null space out of the particular solution.
  for (const auto& q : out.directions) {
    const double d = std::inner_product(out.base.begin(), out.base.end(), q.begin(), 0.0);
    for (std::size_t i = 0; i < out.base.size(); ++i) out.base[i] -= d * q[i];
  }

  const double amax = std::max(sys.a.max_abs(), 1e-300);
  double bmax = 0.0;
  for (double v : sys.b) bmax = std::max(bmax, std::fabs(v));
  double cmax = 0.0;
  for (double v : out.base) cmax = std::max(cmax, std::fabs(v));
  const double tol = kLinearTolerance * (amax * std::max(cmax, 1.0) + bmax) * std::max(1, cols);
  for (int r = 0; r < rows; ++r) {
    double s = -sys.b[static_cast<std::size_t>(r)];
    for (int c = 0; c < cols; ++c) s += sys.a(r, c) * out.base[static_cast<std::size_t>(c)];
    if (std::fabs(s) > tol) return std::nullopt;
  }
  return out;
}

std::optional<std::vector<double>> solve_square(DenseMatrix a, std::vector<double> b) {
  const int n = a.rows;
  const double scale = std::max(a.max_abs(), 1e-300);
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::fabs(a(i, k)) > std::fabs(a(p, k))) p = i;
    if (std::fabs(a(p, k)) <= 1e-14 * scale) return std::nullopt;
    if (p != k) {
      for (int c = 0; c < n; ++c) std::swap(a(k, c), a(p, c));
      std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(p)]);
    }
    for (int i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      for (int c = k; c < n; ++c) a(i, c) -= f * a(k, c);
      b[static_cast<std::size_t>(i)] -= f * b[static_cast<std::size_t>(k)];
    }
  }
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    double s = b[static_cast<std::size_t>(i)];
    for (int c = i + 1; c < n; ++c) s -= a(i, c) * x[static_cast<std::size_t>(c)];
    x[static_cast<std::size_t>(i)] = s / a(i, i);
  }
  return x;
}

}  // namespace latpack
