#pragma once

#include <vector>

#include "wrb/problems/problem.hpp"
#include "wrb/problems/truth.hpp"
#include "wrb/rb/reduced_space.hpp"

namespace wrb::parabolic {

/// Reduced coefficients per time level; coeffs[0] is the projected initial state.
struct ReducedTrajectory {
  std::vector<double> times;
  std::vector<double> controls;
  std::vector<Vector> coeffs;

  [[nodiscard]] int steps() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Backward Euler on the reduced system; the step matrix is factored once.
ReducedTrajectory transient_rb_solve(const problems::TruthProblem& problem, const rb::ReducedSpace& space,
                                     const Parameter& mu, const problems::TimeGrid& grid, bool stabilized);
/// On the problem's own time grid.
ReducedTrajectory transient_rb_solve(const problems::TruthProblem& problem, const rb::ReducedSpace& space,
                                     const Parameter& mu, bool stabilized);

/// Free-dof states V c_j.
problems::Trajectory reconstruct(const rb::ReducedSpace& space, const ReducedTrajectory& reduced);

/// √(m(e_J, e_J) + Σ_{j≥1} Δt |||e_j|||²) with the plain mass form and the
/// energy matrix at μ. The lifting parts cancel, so only the homogenized states
/// enter.
double spacetime_error(const problems::TruthProblem& problem, const Parameter& mu, const problems::Trajectory& truth,
                       const problems::Trajectory& reduced);

/// Δ_N² = m(e_0, e_0) + (Δt/α_LB(μ)) Σ_j ‖r_j‖²_X', evaluated from the stored
/// residual coordinates.
double parabolic_error_estimator(const problems::TruthProblem& problem, const rb::ReducedSpace& space,
                                 const Parameter& mu, const ReducedTrajectory& reduced, bool stabilized);
double parabolic_error_estimator(const rb::ReducedSpace& space, const problems::Thetas& th, double alpha_lb,
                                 const ReducedTrajectory& reduced, bool stabilized);

}  // namespace wrb::parabolic
