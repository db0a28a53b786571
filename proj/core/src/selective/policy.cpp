#include "wrb/selective/policy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wrb/problems/truth.hpp"
#include "wrb/rb/coercivity.hpp"
#include "wrb/rb/online.hpp"

namespace wrb::selective {

StabilizationPolicy StabilizationPolicy::always() { return {}; }
StabilizationPolicy StabilizationPolicy::never() { return {PolicyKind::kNever}; }
StabilizationPolicy StabilizationPolicy::parameter_threshold(int component, double threshold) {
  return {PolicyKind::kParameterThreshold, component, threshold};
}
StabilizationPolicy StabilizationPolicy::density_threshold(double nu, double density_level) {
  StabilizationPolicy p;
  p.kind = PolicyKind::kDensityThreshold;
  p.nu = nu;
  p.density_level = density_level;
  return p;
}

void StabilizationPolicy::validate(const stochastic::ParamDistribution& dist) const {
  if (kind == PolicyKind::kParameterThreshold) {
    if (component < 0 || component >= static_cast<int>(dist.dimension())) {
      throw InvalidArgument("policy: threshold component " + std::to_string(component) + " does not exist");
    }
    const auto& law = dist.laws()[component];
    if (threshold < law.lower() || threshold > law.upper()) {
      throw InvalidArgument("policy: threshold lies outside the range of component " + std::to_string(component));
    }
  }
  if (kind == PolicyKind::kDensityThreshold && !(nu >= 0.0 && nu <= 1.0)) {
    throw InvalidArgument("policy: nu must lie in [0, 1]");
  }
}

bool decide_stabilize(const StabilizationPolicy& policy, const Parameter& mu,
                      const stochastic::ParamDistribution& dist) {
  switch (policy.kind) {
    case PolicyKind::kAlways:
      return true;
    case PolicyKind::kNever:
      return false;
    case PolicyKind::kParameterThreshold:
      return mu.at(policy.component) > policy.threshold;
    case PolicyKind::kDensityThreshold:
      return dist.reference_pdf(mu) > policy.density_level;
  }
  return true;
}

double density_threshold_from_nu(const stochastic::ParamDistribution& dist, double nu, std::size_t n_mc,
                                 std::uint64_t seed) {
  if (!(nu >= 0.0 && nu <= 1.0)) throw InvalidArgument("density threshold: nu must lie in [0, 1]");
  if (nu == 0.0) return 0.0;
  if (nu == 1.0) return std::numeric_limits<double>::infinity();
  if (n_mc < 1) throw InvalidArgument("density threshold: n_mc must be >= 1");
  std::vector<double> rho;
  rho.reserve(n_mc);
  for (const auto& mu : dist.sample(n_mc, seed)) rho.push_back(dist.reference_pdf(mu));
  std::sort(rho.begin(), rho.end());
  // Bisection over the sorted sample for the smallest level c with
  // P̂[ρ ≤ c] ≥ ν; the empirical CDF is monotone in c.
  const double n = static_cast<double>(rho.size());
  std::size_t lo = 0, hi = rho.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const double p = static_cast<double>(std::upper_bound(rho.begin(), rho.end(), rho[mid]) - rho.begin()) / n;
    if (p >= nu) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return rho[lo];
}

double unstabilized_fraction(const StabilizationPolicy& policy, const std::vector<Parameter>& points,
                             const stochastic::ParamDistribution& dist) {
  if (points.empty()) return 0.0;
  std::size_t count = 0;
  for (const auto& mu : points) count += decide_stabilize(policy, mu, dist) ? 0 : 1;
  return static_cast<double>(count) / static_cast<double>(points.size());
}

double offline_only_bound(const problems::TruthProblem& problem, const rb::ReducedSpace& space,
                          const Parameter& mu, double greedy_tolerance, const Vector& truth_full) {
  const double alpha = rb::coercivity_lower_bound(problem, space.coercivity, mu);
  const double c = 1.0 / std::sqrt(alpha);
  const double h = problem.hmax(mu);
  const SparseMatrix G = problems::streamline_matrix(problem, mu);
  const double streamline = std::sqrt(std::max(0.0, truth_full.dot(G * truth_full)));
  return h * c * streamline + (1.0 + h * c * c * problem.beta_sup) * greedy_tolerance;
}

std::vector<CalibrationPoint> calibrate(const problems::TruthProblem& problem, const rb::ReducedSpace& space,
                                        const stochastic::ParamDistribution& dist,
                                        const std::vector<Parameter>& points, double greedy_tolerance) {
  std::vector<CalibrationPoint> out;
  out.reserve(points.size());
  for (const auto& mu : points) {
    CalibrationPoint cp;
    cp.mu = mu;
    cp.density = dist.reference_pdf(mu);
    const Vector c = rb::rb_solve(problem, space, mu, true);
    cp.estimator = rb::error_estimator(problem, space, mu, c, true);
    cp.offline_only = offline_only_bound(problem, space, mu, greedy_tolerance, problems::truth_solve(problem, mu, true));
    out.push_back(std::move(cp));
  }
  return out;
}

double mixed_bound(const std::vector<CalibrationPoint>& points, double nu, double density_level) {
  double stab = 0.0, tail = 0.0;
  for (const auto& p : points) {
    if (p.density > density_level) {
      stab = std::max(stab, p.estimator);
    } else {
      tail = std::max(tail, p.offline_only);
    }
  }
  return (1.0 - nu) * stab + nu * tail;
}

const std::vector<double>& nu_grid() {
  static const std::vector<double> grid{0.0, 0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1};
  return grid;
}

NuChoice tune_nu(const std::vector<CalibrationPoint>& points, const stochastic::ParamDistribution& dist,
                 double tolerance, std::size_t n_mc, std::uint64_t seed) {
  NuChoice best;
  best.bound = mixed_bound(points, 0.0, 0.0);
  for (double nu : nu_grid()) {
    const double level = density_threshold_from_nu(dist, nu, n_mc, seed);
    const double bound = mixed_bound(points, nu, level);
    if (bound < tolerance) best = {nu, level, bound, true};
  }
  return best;
}

}  // namespace wrb::selective
