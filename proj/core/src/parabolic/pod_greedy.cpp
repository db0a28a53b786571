#include "wrb/parabolic/pod_greedy.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "wrb/parabolic/pod.hpp"
#include "wrb/parabolic/transient.hpp"
#include "wrb/problems/truth.hpp"
#include "wrb/rb/coercivity.hpp"

namespace wrb::parabolic {

namespace {

struct TrainingPoint {
  Parameter mu;
  problems::Thetas thetas;
  double alpha = 0.0;
  double weight = 1.0;
  problems::Trajectory truth;  // only when tracing true errors
};

struct Sweep {
  std::vector<double> estimator;
  std::vector<double> weighted;
  double max_true_error = std::numeric_limits<double>::quiet_NaN();
};

Sweep sweep(const problems::TruthProblem& problem, const std::vector<TrainingPoint>& points,
            const rb::ReducedSpace& space, const PodGreedyOptions& o) {
  Sweep out;
  double max_err = 0.0;
  const auto& grid = problem.transient->grid;
  for (const auto& p : points) {
    const ReducedTrajectory red = transient_rb_solve(problem, space, p.mu, grid, o.offline_stabilized);
    const double est = parabolic_error_estimator(space, p.thetas, p.alpha, red, o.offline_stabilized);
    out.estimator.push_back(est);
    out.weighted.push_back(p.weight * est);
    if (o.trace_true_error) {
      const bool online = o.offline_stabilized && o.online_stabilized;
      const ReducedTrajectory shown =
          online == o.offline_stabilized ? red : transient_rb_solve(problem, space, p.mu, grid, online);
      max_err = std::max(max_err, spacetime_error(problem, p.mu, p.truth, reconstruct(space, shown)));
    }
  }
  if (o.trace_true_error) out.max_true_error = max_err;
  return out;
}

}  // namespace

rb::GreedyResult pod_greedy(const problems::TruthProblem& problem, std::vector<Parameter> training,
                            const rb::WeightFn& weight, const PodGreedyOptions& o) {
  if (!problem.transient) throw InvalidArgument(problem.id + ": POD-Greedy needs a transient setup");
  if (training.empty()) throw InvalidArgument("pod_greedy: empty training set");
  if (o.max_basis < 1) throw InvalidArgument("pod_greedy: max_basis must be >= 1");
  if (o.modes_per_iteration < 1) throw InvalidArgument("pod_greedy: modes_per_iteration must be >= 1");
  if (!(o.pod_energy_tol > 0.0 && o.pod_energy_tol <= 1.0)) {
    throw InvalidArgument("pod_greedy: pod_energy_tol must lie in (0, 1]");
  }
  const auto& setup = *problem.transient;
  const Parameter reference = o.coercivity_reference ? *o.coercivity_reference : rb::default_coercivity_reference(problem);
  rb::ReducedSpaceBuilder builder(problem, rb::compute_coercivity(problem, reference, o.eigen));
  const rb::CoercivityData coercivity = builder.space().coercivity;

  const Vector initial = problems::project_initial(problem, setup.initial, setup.grid.control(0.0));
  builder.set_initial(initial);
  builder.append(initial);

  std::vector<TrainingPoint> points;
  points.reserve(training.size());
  for (auto& mu : training) {
    TrainingPoint p;
    p.thetas = problems::evaluate_thetas(problem, mu);
    p.alpha = rb::coercivity_lower_bound(problem, coercivity, mu);
    p.weight = weight ? weight(mu) : 1.0;
    if (!(p.weight >= 0.0) || !std::isfinite(p.weight)) {
      throw InvalidArgument("pod_greedy: weight must be finite and nonnegative at " + to_string(mu));
    }
    if (o.trace_true_error) {
      p.truth = problems::truth_solve_transient(problem, mu, setup.grid, initial, o.offline_stabilized);
    }
    p.mu = std::move(mu);
    points.push_back(std::move(p));
  }

  rb::GreedyResult result;
  if (builder.size() == 0) {
    throw InvalidArgument("pod_greedy: the projected initial state is zero; seed the basis with a snapshot first");
  }
  Sweep current = sweep(problem, points, builder.space(), o);
  result.trace.initial_max_estimator = *std::max_element(current.estimator.begin(), current.estimator.end());
  result.trace.initial_max_weighted_estimator = *std::max_element(current.weighted.begin(), current.weighted.end());
  result.trace.initial_max_true_error = current.max_true_error;

  while (builder.size() < o.max_basis && !points.empty()) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t best = rb::argmax_first(current.weighted);
    if (current.weighted[best] <= o.tolerance) break;
    const TrainingPoint& chosen = points[best];
    const problems::Trajectory traj =
        o.trace_true_error ? chosen.truth
                           : problems::truth_solve_transient(problem, chosen.mu, setup.grid, initial, o.offline_stabilized);

    // Component of the trajectory X-orthogonal to the current basis.
    const Matrix& V = builder.basis();
    const Matrix& XV = builder.x_basis();
    std::vector<Vector> residual;
    residual.reserve(traj.states.size());
    for (const auto& u : traj.states) residual.emplace_back(u - V * (XV.transpose() * u));
    const int room = o.max_basis - builder.size();
    const PodResult modes =
        pod(residual, problem.x_inner, std::min(o.modes_per_iteration, room), o.pod_energy_tol);
    int added = 0;
    for (Eigen::Index i = 0; i < modes.modes.cols(); ++i) added += builder.append(modes.modes.col(i)) ? 1 : 0;
    if (added == 0) {
      result.trace.rejected.push_back(chosen.mu);
      points.erase(points.begin() + static_cast<std::ptrdiff_t>(best));
      current.estimator.erase(current.estimator.begin() + static_cast<std::ptrdiff_t>(best));
      current.weighted.erase(current.weighted.begin() + static_cast<std::ptrdiff_t>(best));
      continue;
    }
    const Parameter selected = chosen.mu;
    builder.add_selected(selected);
    const rb::ReducedSpace space = builder.space();
    current = sweep(problem, points, space, o);
    rb::GreedyRecord rec;
    rec.n = space.size();
    rec.selected = selected;
    rec.max_estimator = *std::max_element(current.estimator.begin(), current.estimator.end());
    rec.max_weighted_estimator = *std::max_element(current.weighted.begin(), current.weighted.end());
    rec.max_true_error = current.max_true_error;
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.trace.records.push_back(std::move(rec));
  }
  result.space = builder.space();
  return result;
}

}  // namespace wrb::parabolic
