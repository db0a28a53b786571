#include "wrb/rb/greedy.hpp"

#include <chrono>
#include <cmath>

#include "wrb/problems/truth.hpp"
#include "wrb/rb/coercivity.hpp"
#include "wrb/rb/online.hpp"

namespace wrb::rb {

std::size_t argmax_first(const std::vector<double>& values) {
  if (values.empty()) throw InvalidArgument("argmax of an empty set");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

namespace {

struct TrainingPoint {
  Parameter mu;
  problems::Thetas thetas;
  double alpha = 0.0;
  double weight = 1.0;
  Vector truth;   // cached only when tracing true errors
  SparseMatrix energy;
};

struct Sweep {
  std::vector<double> estimator;
  std::vector<double> weighted;
  double max_true_error = std::numeric_limits<double>::quiet_NaN();
};

Sweep sweep(const std::vector<TrainingPoint>& points, const ReducedSpace& space, const GreedyOptions& o) {
  Sweep out;
  out.estimator.reserve(points.size());
  out.weighted.reserve(points.size());
  double max_err = 0.0;
  for (const auto& p : points) {
    const Vector c = space.size() > 0 ? rb_solve(space, p.thetas, o.offline_stabilized) : Vector(0);
    const double est = residual_norm(space, p.thetas, c, o.offline_stabilized) / std::sqrt(p.alpha);
    out.estimator.push_back(est);
    out.weighted.push_back(p.weight * est);
    if (o.trace_true_error) {
      const bool online = o.offline_stabilized ? o.online_stabilized : false;
      const Vector cu = space.size() > 0 ? (online == o.offline_stabilized ? c : rb_solve(space, p.thetas, online))
                                         : Vector(0);
      const Vector e = p.truth - reconstruct(space, cu);
      max_err = std::max(max_err, std::sqrt(std::max(0.0, e.dot(p.energy * e))));
    }
  }
  if (o.trace_true_error) out.max_true_error = max_err;
  return out;
}

}  // namespace

GreedyResult greedy(const problems::TruthProblem& problem, std::vector<Parameter> training, const WeightFn& weight,
                    const GreedyOptions& o) {
  if (training.empty()) throw InvalidArgument("greedy: empty training set");
  if (o.max_basis < 1) throw InvalidArgument("greedy: max_basis must be >= 1");
  const Parameter reference = o.coercivity_reference ? *o.coercivity_reference : default_coercivity_reference(problem);
  ReducedSpaceBuilder builder(problem, compute_coercivity(problem, reference, o.eigen));
  const CoercivityData coercivity = builder.space().coercivity;

  std::vector<TrainingPoint> points;
  points.reserve(training.size());
  for (auto& mu : training) {
    TrainingPoint p;
    p.thetas = problems::evaluate_thetas(problem, mu);
    p.alpha = coercivity_lower_bound(problem, coercivity, mu);
    p.weight = weight ? weight(mu) : 1.0;
    if (!(p.weight >= 0.0) || !std::isfinite(p.weight)) {
      throw InvalidArgument("greedy: weight must be finite and nonnegative at " + to_string(mu));
    }
    if (o.trace_true_error) {
      p.truth = problems::truth_solve_free(problem, mu, o.offline_stabilized);
      p.energy = problems::energy_matrix(problem, mu);
    }
    p.mu = std::move(mu);
    points.push_back(std::move(p));
  }

  GreedyResult result;
  Sweep current = sweep(points, builder.space(), o);
  result.trace.initial_max_estimator = *std::max_element(current.estimator.begin(), current.estimator.end());
  result.trace.initial_max_weighted_estimator = *std::max_element(current.weighted.begin(), current.weighted.end());
  result.trace.initial_max_true_error = current.max_true_error;

  while (builder.size() < o.max_basis && !points.empty()) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t best = argmax_first(current.weighted);
    if (current.weighted[best] <= o.tolerance) break;
    TrainingPoint chosen = points[best];
    const Vector snapshot = o.trace_true_error ? chosen.truth
                                               : problems::truth_solve_free(problem, chosen.mu, o.offline_stabilized);
    if (!builder.append(snapshot)) {
      result.trace.rejected.push_back(chosen.mu);
      points.erase(points.begin() + static_cast<std::ptrdiff_t>(best));
      current.estimator.erase(current.estimator.begin() + static_cast<std::ptrdiff_t>(best));
      current.weighted.erase(current.weighted.begin() + static_cast<std::ptrdiff_t>(best));
      continue;
    }
    builder.add_selected(chosen.mu);
    const ReducedSpace space = builder.space();
    current = sweep(points, space, o);
    GreedyRecord rec;
    rec.n = space.size();
    rec.selected = chosen.mu;
    rec.max_estimator = *std::max_element(current.estimator.begin(), current.estimator.end());
    rec.max_weighted_estimator = *std::max_element(current.weighted.begin(), current.weighted.end());
    rec.max_true_error = current.max_true_error;
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.trace.records.push_back(std::move(rec));
  }
  result.space = builder.space();
  return result;
}

}  // namespace wrb::rb
