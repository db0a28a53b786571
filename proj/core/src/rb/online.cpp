#include "wrb/rb/online.hpp"

#include <cmath>
#include <string>

#include "wrb/rb/coercivity.hpp"

namespace wrb::rb {

namespace {

Matrix sum_blocks(const std::vector<Matrix>& blocks, const std::vector<double>& theta, int n) {
  Matrix out = Matrix::Zero(n, n);
  for (std::size_t q = 0; q < blocks.size(); ++q) out += theta[q] * blocks[q];
  return out;
}

}  // namespace

Matrix reduced_matrix(const ReducedSpace& space, const problems::Thetas& th, bool stabilized) {
  Matrix A = sum_blocks(space.a, th.a, space.size());
  if (stabilized) A += sum_blocks(space.s, th.s, space.size());
  return A;
}

Vector reduced_rhs(const ReducedSpace& space, const problems::Thetas& th, bool stabilized) {
  Vector b = Vector::Zero(space.size());
  for (std::size_t q = 0; q < space.f.size(); ++q) b += th.f[q] * space.f[q];
  if (stabilized) {
    for (std::size_t q = 0; q < space.r.size(); ++q) b += th.r[q] * space.r[q];
  }
  return b;
}

Matrix reduced_mass(const ReducedSpace& space, const problems::Thetas& th, bool stabilized) {
  Matrix M = sum_blocks(space.m, th.m, space.size());
  if (stabilized) M += sum_blocks(space.m_stab, th.m_stab, space.size());
  return M;
}

Vector rb_solve(const ReducedSpace& space, const problems::Thetas& th, bool stabilized) {
  if (space.size() < 1) throw InvalidArgument("rb_solve: empty reduced space");
  const Matrix A = reduced_matrix(space, th, stabilized);
  const Eigen::PartialPivLU<Matrix> lu(A);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-15)) {
    throw NumericalFailure("rb_solve: singular reduced system (condition estimate " + std::to_string(1.0 / rcond) + ")");
  }
  return lu.solve(reduced_rhs(space, th, stabilized));
}

Vector rb_solve(const problems::TruthProblem& problem, const ReducedSpace& space, const Parameter& mu,
                bool stabilized) {
  return rb_solve(space, problems::evaluate_thetas(problem, mu), stabilized);
}

double residual_norm(const ReducedSpace& space, const problems::Thetas& th, const Vector& coeffs, bool stabilized) {
  if (coeffs.size() != space.size()) throw InvalidArgument("residual_norm: coefficient vector has wrong length");
  Vector res = space.res_f * Eigen::Map<const Vector>(th.f.data(), static_cast<Eigen::Index>(th.f.size()));
  if (stabilized && space.res_r.cols() > 0) {
    res += space.res_r * Eigen::Map<const Vector>(th.r.data(), static_cast<Eigen::Index>(th.r.size()));
  }
  if (space.size() > 0) {
    for (std::size_t q = 0; q < space.res_a.size(); ++q) res -= th.a[q] * (space.res_a[q] * coeffs);
    if (stabilized) {
      for (std::size_t q = 0; q < space.res_s.size(); ++q) res -= th.s[q] * (space.res_s[q] * coeffs);
    }
  }
  return res.norm();
}

double error_estimator(const problems::TruthProblem& problem, const ReducedSpace& space, const Parameter& mu,
                       const Vector& coeffs, bool stabilized) {
  const problems::Thetas th = problems::evaluate_thetas(problem, mu);
  const double alpha = coercivity_lower_bound(problem, space.coercivity, mu);
  return residual_norm(space, th, coeffs, stabilized) / std::sqrt(alpha);
}

Vector reconstruct(const ReducedSpace& space, const Vector& coeffs) {
  if (coeffs.size() != space.size()) throw InvalidArgument("reconstruct: coefficient vector has wrong length");
  if (space.size() == 0) return Vector::Zero(space.num_free);
  return space.basis * coeffs;
}

double energy_norm(const problems::TruthProblem& problem, const Parameter& mu, const Vector& free_values) {
  const SparseMatrix D = problems::energy_matrix(problem, mu);
  return std::sqrt(std::max(0.0, free_values.dot(D * free_values)));
}

}  // namespace wrb::rb
