#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "wrb/problems/problem.hpp"
#include "wrb/rb/reduced_space.hpp"

namespace wrb::rb {

using WeightFn = std::function<double(const Parameter&)>;

struct GreedyOptions {
  double tolerance = 1e-6;  // on the weighted max estimator
  int max_basis = 20;
  /// Snapshots and the training estimator use the stabilized forms.
  bool offline_stabilized = true;
  /// Variant of the online solve used for traced true errors.
  bool online_stabilized = true;
  bool trace_true_error = false;
  std::optional<Parameter> coercivity_reference;
  EigenOptions eigen{};
};

struct GreedyRecord {
  int n = 0;
  Parameter selected;
  double max_estimator = 0.0;
  double max_weighted_estimator = 0.0;
  double max_true_error = std::numeric_limits<double>::quiet_NaN();
  double seconds = 0.0;  // wall time of this iteration
};

struct GreedyTrace {
  double initial_max_estimator = 0.0;           // N = 0, i.e. ‖F‖_X'/√α_LB
  double initial_max_weighted_estimator = 0.0;
  double initial_max_true_error = std::numeric_limits<double>::quiet_NaN();
  std::vector<GreedyRecord> records;
  std::vector<Parameter> rejected;  // removed from the training set after GS rejection
};

struct GreedyResult {
  ReducedSpace space;
  GreedyTrace trace;
};

/// Weighted greedy: repeatedly adds the truth snapshot at argmax w(μ)·Δ_N(μ).
/// A weight of 1 gives the classical algorithm. Ties go to the lowest index.
GreedyResult greedy(const problems::TruthProblem& problem, std::vector<Parameter> training, const WeightFn& weight,
                    const GreedyOptions& options);

/// Index of the largest entry; the first one wins ties.
std::size_t argmax_first(const std::vector<double>& values);

}  // namespace wrb::rb
