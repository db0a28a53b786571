#include "wrb/fem/solver.hpp"

#include <string>

namespace wrb::fem {

void SparseLuSolver::factorize(const SparseMatrix& A) {
  if (A.rows() != A.cols()) throw InvalidArgument("sparse solve: matrix is not square");
  ready_ = false;
  lu_.analyzePattern(A);
  lu_.factorize(A);
  if (lu_.info() != Eigen::Success) {
    throw NumericalFailure("sparse solve: LU factorization failed (" + lu_.lastErrorMessage() + ")");
  }
  ready_ = true;
}

Vector SparseLuSolver::solve(const Vector& b) const {
  if (!ready_) throw InvalidArgument("sparse solve: no factorization");
  if (b.size() != lu_.rows()) throw InvalidArgument("sparse solve: right-hand side has wrong length");
  Vector x = lu_.solve(b);
  if (!x.allFinite()) throw NumericalFailure("sparse solve: non-finite solution");
  return x;
}

Matrix SparseLuSolver::solve(const Matrix& B) const {
  if (!ready_) throw InvalidArgument("sparse solve: no factorization");
  Matrix X = lu_.solve(B);
  if (!X.allFinite()) throw NumericalFailure("sparse solve: non-finite solution");
  return X;
}

Vector solve_sparse(const SparseMatrix& A, const Vector& b) { return SparseLuSolver(A).solve(b); }

}  // namespace wrb::fem
