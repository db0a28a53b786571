#pragma once

#include <functional>
#include <vector>

#include "wrb/problems/problem.hpp"
#include "wrb/rb/reduced_space.hpp"
#include "wrb/stochastic/distribution.hpp"

namespace wrb::stochastic {

/// Δ_N^w(μ) = Δ_N(μ)·√ρ(μ), with ρ the standardized density.
double weighted_estimator(const problems::TruthProblem& problem, const rb::ReducedSpace& space,
                          const ParamDistribution& dist, const Parameter& mu, bool stabilized);

/// w(μ) = √ρ(μ) for the weighted greedy.
std::function<double(const Parameter&)> sqrt_density_weight(const ParamDistribution& dist);

using StabilizeFn = std::function<bool(const Parameter&)>;

struct TestPoint {
  Parameter mu;
  bool stabilized = true;
  double error = 0.0;      // |||u^𝒩 − u_N|||_μ
  double estimator = 0.0;  // Δ_N of the online variant
  double truth_seconds = 0.0;
  double online_seconds = 0.0;
};

/// Truth (stabilized) vs reduced solutions at each μ, with the online variant
/// chosen per point by `stabilize` (always stabilized when empty).
std::vector<TestPoint> evaluate_points(const problems::TruthProblem& problem, const rb::ReducedSpace& space,
                                       const std::vector<Parameter>& points, const StabilizeFn& stabilize = {});

enum class McMode {
  kBetaSampled,        // μ_i ~ ρ:       (1/M) Σ e(μ_i)
  kUniformImportance,  // μ_j uniform:   (1/M) Σ e(μ_j) ρ(μ_j), reference box volume 1
};

struct MeanError {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
};

/// Sample mean and standard error of values[i]·weights[i] (weights empty → 1).
MeanError sample_mean(const std::vector<double>& values, const std::vector<double>& weights = {});

/// MC estimate of E[|||e|||] in the requested mode with M fresh samples.
MeanError mc_mean_error(const problems::TruthProblem& problem, const rb::ReducedSpace& space,
                        const ParamDistribution& dist, std::size_t samples, McMode mode, std::uint64_t seed,
                        const StabilizeFn& stabilize = {});

/// Same, reusing already evaluated test points.
MeanError mc_mean_error(const std::vector<TestPoint>& points, const ParamDistribution& dist, McMode mode);

}  // namespace wrb::stochastic
