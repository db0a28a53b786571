#include "wrb/rb/orthonormal.hpp"

#include <cmath>

namespace wrb::rb {

bool XOrthonormalSet::append(const Vector& v, double drop_tol) {
  if (!x_) throw InvalidArgument("orthonormal set: no inner product");
  return append(v, (*x_) * v, drop_tol);
}

bool XOrthonormalSet::append(const Vector& v, const Vector& xv, double drop_tol) {
  if (vectors_.size() > 0 && v.size() != vectors_.rows()) {
    throw InvalidArgument("orthonormal set: vector length does not match the existing set");
  }
  const double before = std::sqrt(std::max(0.0, v.dot(xv)));
  if (!(before > 0.0) || !std::isfinite(before)) return false;

  Vector w = v;
  Vector xw = xv;
  for (int pass = 0; pass < 2; ++pass) {
    for (int i = 0; i < size(); ++i) {
      const double c = x_vectors_.col(i).dot(w);
      w -= c * vectors_.col(i);
      xw -= c * x_vectors_.col(i);
    }
  }
  // Recompute the image directly when an operator is available, so rounding
  // in the running update does not accumulate.
  if (x_) xw = (*x_) * w;
  const double after = std::sqrt(std::max(0.0, w.dot(xw)));
  if (!(after > drop_tol * before)) return false;

  const int n = size();
  if (n == 0) {
    vectors_.resize(v.size(), 1);
    x_vectors_.resize(v.size(), 1);
  } else {
    vectors_.conservativeResize(Eigen::NoChange, n + 1);
    x_vectors_.conservativeResize(Eigen::NoChange, n + 1);
  }
  vectors_.col(n) = w / after;
  x_vectors_.col(n) = xw / after;
  return true;
}

}  // namespace wrb::rb
