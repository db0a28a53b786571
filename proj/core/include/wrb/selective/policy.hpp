#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "wrb/problems/problem.hpp"
#include "wrb/rb/reduced_space.hpp"
#include "wrb/stochastic/distribution.hpp"

namespace wrb::selective {

enum class PolicyKind { kAlways, kNever, kParameterThreshold, kDensityThreshold };

/// Decides per query whether the online solve uses the stabilized blocks.
struct StabilizationPolicy {
  PolicyKind kind = PolicyKind::kAlways;
  int component = 0;       // parameter threshold: μ[component] > threshold → stabilize
  double threshold = 0.0;
  double nu = 0.0;         // density threshold: probability mass of the unstabilized tail
  double density_level = 0.0;  // ρ̃; ρ(μ) > ρ̃ → stabilize

  static StabilizationPolicy always();
  static StabilizationPolicy never();
  static StabilizationPolicy parameter_threshold(int component, double threshold);
  static StabilizationPolicy density_threshold(double nu, double density_level);

  /// Throws InvalidArgument for thresholds outside the distribution support
  /// or ν outside [0, 1].
  void validate(const stochastic::ParamDistribution& dist) const;
};

bool decide_stabilize(const StabilizationPolicy& policy, const Parameter& mu,
                      const stochastic::ParamDistribution& dist);

/// ρ̃ with P[ρ(μ) ≤ ρ̃] = ν under μ ~ ρ, estimated from n_mc draws. ν = 0 gives
/// 0 and ν = 1 gives +∞.
double density_threshold_from_nu(const stochastic::ParamDistribution& dist, double nu, std::size_t n_mc,
                                 std::uint64_t seed);

/// Fraction of `points` that a policy leaves unstabilized.
double unstabilized_fraction(const StabilizationPolicy& policy, const std::vector<Parameter>& points,
                             const stochastic::ParamDistribution& dist);

/// Δ_N^I(μ) = h_max C ‖β·∇u‖ + (1 + h_max C² ‖β‖_∞) ε*, C = 1/√α_LB(μ).
/// `truth_full` is the full stabilized truth field at μ.
double offline_only_bound(const problems::TruthProblem& problem, const rb::ReducedSpace& space,
                          const Parameter& mu, double greedy_tolerance, const Vector& truth_full);

/// Per-point data for the mixed mean-error bound.
struct CalibrationPoint {
  Parameter mu;
  double density = 0.0;          // standardized ρ(μ)
  double estimator = 0.0;        // Δ_N, stabilized online
  double offline_only = 0.0;     // Δ_N^I
};

std::vector<CalibrationPoint> calibrate(const problems::TruthProblem& problem, const rb::ReducedSpace& space,
                                        const stochastic::ParamDistribution& dist,
                                        const std::vector<Parameter>& points, double greedy_tolerance);

/// (1 − ν) max_{ρ>ρ̃} Δ_N + ν max_{ρ≤ρ̃} Δ_N^I over the calibration points.
double mixed_bound(const std::vector<CalibrationPoint>& points, double nu, double density_level);

struct NuChoice {
  double nu = 0.0;
  double density_level = 0.0;
  double bound = 0.0;
  bool satisfied = false;  // false: no grid value met the tolerance, ν = 0 returned
};

const std::vector<double>& nu_grid();

/// Largest ν on the grid whose mixed bound is below `tolerance`.
NuChoice tune_nu(const std::vector<CalibrationPoint>& points, const stochastic::ParamDistribution& dist,
                 double tolerance, std::size_t n_mc, std::uint64_t seed);

}  // namespace wrb::selective
