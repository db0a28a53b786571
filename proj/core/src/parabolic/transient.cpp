#include "wrb/parabolic/transient.hpp"

#include <cmath>

#include "wrb/rb/coercivity.hpp"
#include "wrb/rb/online.hpp"

namespace wrb::parabolic {

namespace {

Matrix weighted_sum(const std::vector<Matrix>& blocks, const std::vector<double>& theta, Eigen::Index rows,
                    Eigen::Index cols) {
  Matrix out = Matrix::Zero(rows, cols);
  for (std::size_t q = 0; q < blocks.size(); ++q) out += theta[q] * blocks[q];
  return out;
}

const problems::TimeGrid& problem_grid(const problems::TruthProblem& problem) {
  if (!problem.transient) throw InvalidArgument(problem.id + ": problem was built without a transient setup");
  return problem.transient->grid;
}

}  // namespace

ReducedTrajectory transient_rb_solve(const problems::TruthProblem& problem, const rb::ReducedSpace& space,
                                     const Parameter& mu, const problems::TimeGrid& grid, bool stabilized) {
  grid.validate();
  if (!space.has_initial) throw InvalidArgument("transient reduced solve: space carries no initial state");
  if (space.size() < 1) throw InvalidArgument("transient reduced solve: empty reduced space");
  const problems::Thetas th = problems::evaluate_thetas(problem, mu);
  const Matrix M = rb::reduced_mass(space, th, stabilized);
  const Matrix A = rb::reduced_matrix(space, th, stabilized);
  const Vector F = rb::reduced_rhs(space, th, stabilized);
  const Eigen::PartialPivLU<Matrix> lu(M / grid.dt + A);
  if (!(lu.rcond() > 1e-15)) throw NumericalFailure("transient reduced solve: singular step matrix at " + to_string(mu));

  ReducedTrajectory out;
  out.times.push_back(0.0);
  out.controls.push_back(grid.control(0.0));
  out.coeffs.push_back(space.initial);
  for (int j = 1; j <= grid.steps; ++j) {
    const double t = grid.time(j);
    const double g = grid.control(t);
    out.coeffs.push_back(lu.solve(M * out.coeffs.back() / grid.dt + g * F));
    out.times.push_back(t);
    out.controls.push_back(g);
  }
  return out;
}

ReducedTrajectory transient_rb_solve(const problems::TruthProblem& problem, const rb::ReducedSpace& space,
                                     const Parameter& mu, bool stabilized) {
  return transient_rb_solve(problem, space, mu, problem_grid(problem), stabilized);
}

problems::Trajectory reconstruct(const rb::ReducedSpace& space, const ReducedTrajectory& reduced) {
  problems::Trajectory out;
  out.times = reduced.times;
  out.controls = reduced.controls;
  for (const auto& c : reduced.coeffs) out.states.push_back(rb::reconstruct(space, c));
  return out;
}

double spacetime_error(const problems::TruthProblem& problem, const Parameter& mu, const problems::Trajectory& truth,
                       const problems::Trajectory& reduced) {
  if (truth.states.size() != reduced.states.size() || truth.times.size() != reduced.times.size()) {
    throw InvalidArgument("spacetime error: trajectories have different lengths");
  }
  if (truth.states.size() < 2) throw InvalidArgument("spacetime error: at least one time step is required");
  for (std::size_t j = 0; j < truth.times.size(); ++j) {
    if (std::abs(truth.times[j] - reduced.times[j]) > 1e-12 * std::max(1.0, std::abs(truth.times[j]))) {
      throw InvalidArgument("spacetime error: time grids differ");
    }
  }
  const SparseMatrix M = problems::mass_matrix(problem, mu, false);
  const SparseMatrix D = problems::energy_matrix(problem, mu);
  const std::size_t last = truth.states.size() - 1;
  const Vector eJ = truth.states[last] - reduced.states[last];
  double total = eJ.dot(M * eJ);
  for (std::size_t j = 1; j <= last; ++j) {
    const Vector e = truth.states[j] - reduced.states[j];
    total += (truth.times[j] - truth.times[j - 1]) * e.dot(D * e);
  }
  return std::sqrt(std::max(0.0, total));
}

double parabolic_error_estimator(const rb::ReducedSpace& space, const problems::Thetas& th, double alpha_lb,
                                 const ReducedTrajectory& reduced, bool stabilized) {
  if (!space.has_initial) throw InvalidArgument("parabolic estimator: space carries no initial state");
  if (reduced.steps() < 1) throw InvalidArgument("parabolic estimator: at least one time step is required");
  const Eigen::Index k = space.res_f.rows();
  const Eigen::Index n = space.size();
  auto theta_map = [](const std::vector<double>& v) {
    return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
  };
  Vector rf = space.res_f * theta_map(th.f);
  if (stabilized && space.res_r.cols() > 0) rf += space.res_r * theta_map(th.r);
  Matrix ra = weighted_sum(space.res_a, th.a, k, n);
  Matrix rm = weighted_sum(space.res_m, th.m, k, n);
  if (stabilized) {
    ra += weighted_sum(space.res_s, th.s, k, n);
    rm += weighted_sum(space.res_m_stab, th.m_stab, k, n);
  }

  double sum = 0.0;
  double dt_weighted = 0.0;
  for (int j = 1; j <= reduced.steps(); ++j) {
    const double dt = reduced.times[j] - reduced.times[j - 1];
    const Vector& c = reduced.coeffs[j];
    const Vector res = reduced.controls[j] * rf - rm * ((c - reduced.coeffs[j - 1]) / dt) - ra * c;
    dt_weighted += dt * res.squaredNorm();
  }
  sum += dt_weighted / alpha_lb;

  // Plain-mass energy of the initial projection error ũ0 − V c0.
  const Vector& c0 = reduced.coeffs[0];
  double initial = 0.0;
  for (std::size_t q = 0; q < space.m.size(); ++q) {
    initial += th.m[q] * (space.initial_mass_self[q] - 2.0 * c0.dot(space.initial_mass_cross[q]) +
                          c0.dot(space.m[q] * c0));
  }
  sum += std::max(0.0, initial);
  return std::sqrt(sum);
}

double parabolic_error_estimator(const problems::TruthProblem& problem, const rb::ReducedSpace& space,
                                 const Parameter& mu, const ReducedTrajectory& reduced, bool stabilized) {
  return parabolic_error_estimator(space, problems::evaluate_thetas(problem, mu),
                                   rb::coercivity_lower_bound(problem, space.coercivity, mu), reduced, stabilized);
}

}  // namespace wrb::parabolic
