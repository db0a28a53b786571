#pragma once

#include "wrb/common.hpp"

namespace wrb::rb {

/// Columns orthonormal in the inner product (u, v)_X = uᵀ X v. Keeps X·V
/// alongside V so that projections cost one dense product each.
class XOrthonormalSet {
 public:
  XOrthonormalSet() = default;
  explicit XOrthonormalSet(const SparseMatrix* x) : x_(x) {}

  /// Modified Gram–Schmidt with one reorthogonalization pass. Returns false
  /// (and leaves the set untouched) when less than `drop_tol` of the X-norm
  /// survives orthogonalization.
  bool append(const Vector& v, double drop_tol = 1e-10);
  /// Same, for a vector whose image X·v is already known.
  bool append(const Vector& v, const Vector& xv, double drop_tol = 1e-10);

  [[nodiscard]] int size() const { return static_cast<int>(vectors_.cols()); }
  [[nodiscard]] const Matrix& vectors() const { return vectors_; }
  [[nodiscard]] const Matrix& x_vectors() const { return x_vectors_; }

 private:
  const SparseMatrix* x_ = nullptr;
  Matrix vectors_;
  Matrix x_vectors_;
};

}  // namespace wrb::rb
