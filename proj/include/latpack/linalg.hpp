#pragma once

#include <optional>
#include <vector>

namespace latpack {

/// Small dense row-major matrix used by the linear stage (at most ~9 columns).
struct DenseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r * c), 0.0) {}

  double operator()(int r, int c) const { return data[static_cast<std::size_t>(r * cols + c)]; }
  double& operator()(int r, int c) { return data[static_cast<std::size_t>(r * cols + c)]; }
  double max_abs() const;
  DenseMatrix transposed() const;
};

/// A·x = b with at most 7 rows and 9 columns in the packing search, but any size works.
struct LinSystem {
  DenseMatrix a;
  std::vector<double> b;
};

/// Solution set {base + Σ t_j directions[j]}; directions are orthonormal.
struct AffineSolutionSet {
  std::vector<double> base;
  std::vector<std::vector<double>> directions;
  int rank = 0;
};

/// Relative pivot threshold (times the largest column norm) of the elimination.
inline constexpr double kPivotThreshold = 1e-11;
/// Relative residual accepted for A·C = b (times the largest entry of A).
inline constexpr double kLinearTolerance = 1e-10;

/// Parameterizes the solution set of A·x = b, or returns nullopt when b is
/// outside the column span of A.
std::optional<AffineSolutionSet> solve_affine(const LinSystem& sys);

/// Numerical rank using the same pivoting rule as solve_affine.
int matrix_rank(const DenseMatrix& a);

/// Solves a square system by partial pivoting; nullopt when singular.
std::optional<std::vector<double>> solve_square(DenseMatrix a, std::vector<double> b);

}  // namespace latpack
