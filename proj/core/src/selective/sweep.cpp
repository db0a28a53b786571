#include "wrb/selective/sweep.hpp"

#include "wrb/problems/truth.hpp"
#include "wrb/rb/online.hpp"

namespace wrb::selective {

std::vector<DualPoint> evaluate_dual(const problems::TruthProblem& problem, const rb::ReducedSpace& space,
                                     const stochastic::ParamDistribution& dist, const std::vector<Parameter>& points) {
  std::vector<DualPoint> out;
  out.reserve(points.size());
  for (const auto& mu : points) {
    const Vector truth = problems::truth_solve_free(problem, mu, true);
    const problems::Thetas th = problems::evaluate_thetas(problem, mu);
    DualPoint p;
    p.mu = mu;
    p.density = dist.reference_pdf(mu);
    p.error_stabilized = rb::energy_norm(problem, mu, truth - rb::reconstruct(space, rb::rb_solve(space, th, true)));
    p.error_plain = rb::energy_norm(problem, mu, truth - rb::reconstruct(space, rb::rb_solve(space, th, false)));
    out.push_back(std::move(p));
  }
  return out;
}

stochastic::MeanError policy_mean_error(const std::vector<DualPoint>& points, const StabilizationPolicy& policy,
                                        const stochastic::ParamDistribution& dist, stochastic::McMode mode) {
  std::vector<double> errors, weights;
  errors.reserve(points.size());
  for (const auto& p : points) {
    errors.push_back(decide_stabilize(policy, p.mu, dist) ? p.error_stabilized : p.error_plain);
    if (mode == stochastic::McMode::kUniformImportance) weights.push_back(p.density);
  }
  return stochastic::sample_mean(errors, weights);
}

namespace {

SweepRow make_row(const std::vector<DualPoint>& error_points, const std::vector<Parameter>& percent_points,
                  const stochastic::ParamDistribution& dist, const StabilizationPolicy& policy,
                  stochastic::McMode mode) {
  SweepRow row;
  const auto m = policy_mean_error(error_points, policy, dist, mode);
  row.error = m.mean;
  row.standard_error = m.standard_error;
  row.percent_unstabilized = 100.0 * unstabilized_fraction(policy, percent_points, dist);
  return row;
}

}  // namespace

std::vector<SweepRow> sweep_parameter_threshold(const std::vector<DualPoint>& error_points,
                                                const std::vector<Parameter>& percent_points,
                                                const stochastic::ParamDistribution& dist, int component,
                                                const std::vector<double>& thresholds, stochastic::McMode mode) {
  std::vector<SweepRow> rows;
  for (double t : thresholds) {
    const auto policy = StabilizationPolicy::parameter_threshold(component, t);
    policy.validate(dist);
    SweepRow row = make_row(error_points, percent_points, dist, policy, mode);
    row.threshold = t;
    rows.push_back(row);
  }
  return rows;
}

std::vector<SweepRow> sweep_density_threshold(const std::vector<DualPoint>& error_points,
                                              const std::vector<Parameter>& percent_points,
                                              const stochastic::ParamDistribution& dist,
                                              const std::vector<double>& nus, std::size_t n_mc, std::uint64_t seed,
                                              stochastic::McMode mode) {
  std::vector<SweepRow> rows;
  for (double nu : nus) {
    const double level = density_threshold_from_nu(dist, nu, n_mc, seed);
    const auto policy = StabilizationPolicy::density_threshold(nu, level);
    policy.validate(dist);
    SweepRow row = make_row(error_points, percent_points, dist, policy, mode);
    row.threshold = nu;
    row.density_level = level;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace wrb::selective
