#pragma once

#include <optional>
#include <vector>

#include "wrb/problems/problem.hpp"
#include "wrb/rb/greedy.hpp"

namespace wrb::parabolic {

struct PodGreedyOptions {
  double tolerance = 1e-6;  // on the weighted max estimator
  int max_basis = 20;
  int modes_per_iteration = 2;
  double pod_energy_tol = 1.0 - 1e-7;
  bool offline_stabilized = true;
  bool online_stabilized = true;
  /// Keeps every training trajectory in memory to trace the max space-time error.
  bool trace_true_error = false;
  std::optional<Parameter> coercivity_reference;
  rb::EigenOptions eigen{};
};

/// POD-Greedy on the problem's own time grid. The basis is seeded with the
/// X-normalized projected initial state; every iteration adds the leading POD
/// modes of the selected trajectory's component orthogonal to the current
/// basis. Trace records hold the space-time estimator and error.
rb::GreedyResult pod_greedy(const problems::TruthProblem& problem, std::vector<Parameter> training,
                            const rb::WeightFn& weight, const PodGreedyOptions& options);

}  // namespace wrb::parabolic
