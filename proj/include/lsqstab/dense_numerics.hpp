#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lsqstab/jacobi_basis.hpp"

namespace lsqstab {

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t order);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::vector<double> column(std::size_t c) const;

  double frobenius_norm() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Square matrix validated to be symmetric on construction:
/// |a_ij - a_ji| <= 1e-14 max(1, |a_ij|). Throws ContractError otherwise.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(Matrix entries);
  static SymmetricMatrix diagonal(std::span<const double> diag);

  std::size_t order() const noexcept { return entries_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  const Matrix& matrix() const noexcept { return entries_; }

 private:
  Matrix entries_;
};

struct EigenDecomposition {
  std::vector<double> values;  ///< ascending
  Matrix vectors;              ///< column k is the eigenvector of values[k]
};

inline constexpr double kDefaultEigenTolerance = 1e-12;

/// Cyclic Jacobi rotations until the off-diagonal Frobenius mass drops below
/// tol * ||A||_F. Eigenvectors are orthonormal to working precision.
EigenDecomposition symmetric_eigen(const SymmetricMatrix& a,
                                   double tol = kDefaultEigenTolerance);

/// Eigenvalues only (ascending): Householder reduction to tridiagonal form
/// followed by implicit QL. Roughly an order of magnitude cheaper than
/// symmetric_eigen on the matrix sizes used in stability sweeps.
std::vector<double> symmetric_eigenvalues(const SymmetricMatrix& a);

/// Smallest singular value of a (rows >= cols) from the Householder QR factor
/// R as 1 / ||R^-1||_2. Relative accuracy is about eps * cond(a), where
/// eigenvalues of a^T a only reach eps * cond(a)^2. Returns 0 when rows < cols
/// or R is numerically singular.
double smallest_singular_value(Matrix a);

struct Quadrature {
  std::vector<double> nodes;    ///< ascending
  std::vector<double> weights;  ///< sum to 1
};

/// k-point Gauss rule for the Jacobi probability measure (Golub-Welsch on the
/// monic recurrence matrix). Exact for polynomials of degree <= 2k-1.
Quadrature gauss_jacobi_nodes(const JacobiParams& params, int k);

// ---------------------------------------------------------------------------
// Linear programming

struct LPConstraint {
  std::vector<double> a;  ///< a^T z <= b
  double b = 0.0;
};

/// maximize objective^T z subject to every constraint; z is free.
struct LPProblem {
  std::vector<double> objective;
  std::vector<LPConstraint> constraints;

  std::size_t variables() const noexcept { return objective.size(); }
};

enum class LPStatus { optimal, infeasible, unbounded };

struct LPResult {
  LPStatus status = LPStatus::infeasible;
  double value = 0.0;
  std::vector<double> argmax;
  /// Nonnegative multipliers y with A^T y = objective and b^T y = value
  /// (only when optimal).
  std::vector<double> dual;
};

/// Two-phase dense tableau simplex with Bland's rule. Free variables are
/// split into positive and negative parts.
LPResult lp_maximize(const LPProblem& problem);

}  // namespace lsqstab
