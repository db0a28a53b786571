#pragma once

#include <Eigen/SparseLU>

#include "wrb/common.hpp"

namespace wrb::fem {

/// LU factorization kept alive for repeated right-hand sides.
class SparseLuSolver {
 public:
  SparseLuSolver() = default;
  explicit SparseLuSolver(const SparseMatrix& A) { factorize(A); }

  /// Throws NumericalFailure if the matrix is singular.
  void factorize(const SparseMatrix& A);
  [[nodiscard]] Vector solve(const Vector& b) const;
  [[nodiscard]] Matrix solve(const Matrix& B) const;
  [[nodiscard]] bool ready() const { return ready_; }

 private:
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu_;
  bool ready_ = false;
};

Vector solve_sparse(const SparseMatrix& A, const Vector& b);

}  // namespace wrb::fem
