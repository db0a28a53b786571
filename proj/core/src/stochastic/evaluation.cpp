#include "wrb/stochastic/evaluation.hpp"

#include <chrono>
#include <cmath>

#include "wrb/problems/truth.hpp"
#include "wrb/rb/coercivity.hpp"
#include "wrb/rb/online.hpp"

namespace wrb::stochastic {

double weighted_estimator(const problems::TruthProblem& problem, const rb::ReducedSpace& space,
                          const ParamDistribution& dist, const Parameter& mu, bool stabilized) {
  const double rho = dist.reference_pdf(mu);
  if (rho == 0.0) return 0.0;
  const Vector c = rb::rb_solve(problem, space, mu, stabilized);
  return rb::error_estimator(problem, space, mu, c, stabilized) * std::sqrt(rho);
}

std::function<double(const Parameter&)> sqrt_density_weight(const ParamDistribution& dist) {
  return [dist](const Parameter& mu) { return std::sqrt(dist.reference_pdf(mu)); };
}

std::vector<TestPoint> evaluate_points(const problems::TruthProblem& problem, const rb::ReducedSpace& space,
                                       const std::vector<Parameter>& points, const StabilizeFn& stabilize) {
  using clock = std::chrono::steady_clock;
  std::vector<TestPoint> out;
  out.reserve(points.size());
  for (const auto& mu : points) {
    TestPoint tp;
    tp.mu = mu;
    tp.stabilized = stabilize ? stabilize(mu) : true;
    const auto t0 = clock::now();
    Vector truth;
    try {
      truth = problems::truth_solve_free(problem, mu, true);
    } catch (const std::exception& e) {
      throw NumericalFailure("truth solve failed at " + to_string(mu) + ": " + e.what());
    }
    const auto t1 = clock::now();
    const problems::Thetas th = problems::evaluate_thetas(problem, mu);
    const Vector c = rb::rb_solve(space, th, tp.stabilized);
    const auto t2 = clock::now();
    const double alpha = rb::coercivity_lower_bound(problem, space.coercivity, mu);
    tp.estimator = rb::residual_norm(space, th, c, tp.stabilized) / std::sqrt(alpha);
    tp.error = rb::energy_norm(problem, mu, truth - rb::reconstruct(space, c));
    tp.truth_seconds = std::chrono::duration<double>(t1 - t0).count();
    tp.online_seconds = std::chrono::duration<double>(t2 - t1).count();
    out.push_back(std::move(tp));
  }
  return out;
}

MeanError sample_mean(const std::vector<double>& values, const std::vector<double>& weights) {
  MeanError m;
  m.samples = values.size();
  if (values.empty()) return m;
  if (!weights.empty() && weights.size() != values.size()) throw InvalidArgument("sample_mean: weight count mismatch");
  const double n = static_cast<double>(values.size());
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i] * (weights.empty() ? 1.0 : weights[i]);
    sum += v;
    sum2 += v * v;
  }
  m.mean = sum / n;
  if (values.size() > 1) {
    const double var = std::max(0.0, (sum2 - n * m.mean * m.mean) / (n - 1.0));
    m.standard_error = std::sqrt(var / n);
  }
  return m;
}

MeanError mc_mean_error(const std::vector<TestPoint>& points, const ParamDistribution& dist, McMode mode) {
  std::vector<double> errors, weights;
  for (const auto& p : points) {
    errors.push_back(p.error);
    if (mode == McMode::kUniformImportance) weights.push_back(dist.reference_pdf(p.mu));
  }
  return sample_mean(errors, weights);
}

MeanError mc_mean_error(const problems::TruthProblem& problem, const rb::ReducedSpace& space,
                        const ParamDistribution& dist, std::size_t samples, McMode mode, std::uint64_t seed,
                        const StabilizeFn& stabilize) {
  if (samples < 1) throw InvalidArgument("mc_mean_error: at least one sample required");
  const auto points =
      mode == McMode::kBetaSampled ? dist.sample(samples, seed) : dist.sample_uniform(samples, seed);
  return mc_mean_error(evaluate_points(problem, space, points, stabilize), dist, mode);
}

}  // namespace wrb::stochastic
