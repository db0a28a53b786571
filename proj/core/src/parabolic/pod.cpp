#include "wrb/parabolic/pod.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace wrb::parabolic {

PodResult pod(const std::vector<Vector>& snapshots, const SparseMatrix& x_inner, int max_modes, double energy_tol) {
  if (snapshots.empty()) throw InvalidArgument("pod: at least one snapshot is required");
  if (max_modes < 1) throw InvalidArgument("pod: max_modes must be >= 1");
  if (!(energy_tol > 0.0 && energy_tol <= 1.0)) throw InvalidArgument("pod: energy_tol must lie in (0, 1]");
  const auto rows = snapshots.front().size();
  const auto count = static_cast<Eigen::Index>(snapshots.size());
  Matrix S(rows, count);
  for (Eigen::Index j = 0; j < count; ++j) {
    if (snapshots[j].size() != rows) throw InvalidArgument("pod: snapshots differ in length");
    S.col(j) = snapshots[j];
  }
  const Matrix XS = x_inner * S;
  Matrix C = S.transpose() * XS;
  C = 0.5 * (C + C.transpose()).eval();

  const Eigen::SelfAdjointEigenSolver<Matrix> eig(C);
  if (eig.info() != Eigen::Success) throw NumericalFailure("pod: eigen-decomposition failed");
  PodResult out;
  out.eigenvalues = eig.eigenvalues().reverse();
  const Matrix vectors = eig.eigenvectors().rowwise().reverse();

  const double trace = out.eigenvalues.cwiseMax(0.0).sum();
  if (!(trace > 0.0)) {
    out.modes = Matrix(rows, 0);
    return out;
  }
  int needed = 0;
  double captured = 0.0;
  while (needed < count && captured < energy_tol * trace) captured += std::max(0.0, out.eigenvalues[needed++]);
  // Eigenvalues at round-off level carry no direction.
  const double floor = out.eigenvalues[0] * 1e-14 * static_cast<double>(count);
  int keep = 0;
  while (keep < std::min(needed, max_modes) && out.eigenvalues[keep] > floor) ++keep;

  out.modes.resize(rows, keep);
  for (int i = 0; i < keep; ++i) out.modes.col(i) = S * vectors.col(i) / std::sqrt(out.eigenvalues[i]);
  return out;
}

}  // namespace wrb::parabolic
