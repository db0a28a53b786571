#pragma once

#include <cstdint>
#include <vector>

#include "wrb/problems/problem.hpp"
#include "wrb/rb/reduced_space.hpp"
#include "wrb/selective/policy.hpp"
#include "wrb/stochastic/distribution.hpp"
#include "wrb/stochastic/evaluation.hpp"

namespace wrb::selective {

/// Truth error of both online variants at one μ, so sweeps over thresholds
/// need no further solves.
struct DualPoint {
  Parameter mu;
  double density = 0.0;  // standardized ρ(μ)
  double error_stabilized = 0.0;
  double error_plain = 0.0;
};

std::vector<DualPoint> evaluate_dual(const problems::TruthProblem& problem, const rb::ReducedSpace& space,
                                     const stochastic::ParamDistribution& dist, const std::vector<Parameter>& points);

/// Mean error under a policy, in either MC mode over the matching point set.
stochastic::MeanError policy_mean_error(const std::vector<DualPoint>& points, const StabilizationPolicy& policy,
                                        const stochastic::ParamDistribution& dist, stochastic::McMode mode);

struct SweepRow {
  double threshold = 0.0;      // μ̃ for parameter sweeps, ν̃ for density sweeps
  double density_level = 0.0;  // ρ̃ (density sweeps only)
  double error = 0.0;
  double standard_error = 0.0;
  double percent_unstabilized = 0.0;
};

/// Error from `error_points` (drawn in `mode`), percentage from `percent_points`
/// (a uniform test set).
std::vector<SweepRow> sweep_parameter_threshold(const std::vector<DualPoint>& error_points,
                                                const std::vector<Parameter>& percent_points,
                                                const stochastic::ParamDistribution& dist, int component,
                                                const std::vector<double>& thresholds, stochastic::McMode mode);

std::vector<SweepRow> sweep_density_threshold(const std::vector<DualPoint>& error_points,
                                              const std::vector<Parameter>& percent_points,
                                              const stochastic::ParamDistribution& dist,
                                              const std::vector<double>& nus, std::size_t n_mc, std::uint64_t seed,
                                              stochastic::McMode mode);

}  // namespace wrb::selective
