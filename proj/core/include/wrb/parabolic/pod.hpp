#pragma once

#include <vector>

#include "wrb/common.hpp"

namespace wrb::parabolic {

struct PodResult {
  Matrix modes;         // X-orthonormal columns
  Vector eigenvalues;   // of the snapshot Gram, descending
};

/// Method of snapshots on C = Sᵀ X S. Keeps the leading min(max_modes, k)
/// modes, where k is the first count whose eigenvalues reach `energy_tol` of
/// the trace. All-zero snapshots give no modes.
PodResult pod(const std::vector<Vector>& snapshots, const SparseMatrix& x_inner, int max_modes, double energy_tol);

}  // namespace wrb::parabolic
