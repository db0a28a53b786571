#pragma once

#include <functional>
#include <vector>

#include "wrb/common.hpp"
#include "wrb/fem/mesh.hpp"

namespace wrb::fem {

struct DirichletCondition {
  int tag = 0;
  std::function<double(const Point&)> value;
};

/// What to do when two tags prescribe different values at a shared node.
enum class CornerRule {
  kReject,
  kPreferHomogeneous,  // the tag prescribing 0 wins
};

struct LiftingData {
  Vector lifting;                  // full-length nodal vector, zero on free dofs
  std::vector<int> free_dofs;      // ascending
  std::vector<int> dirichlet_dofs; // ascending
  std::vector<int> free_index;     // node -> position in free_dofs, -1 if Dirichlet

  [[nodiscard]] int num_free() const { return static_cast<int>(free_dofs.size()); }
  [[nodiscard]] int num_nodes() const { return static_cast<int>(free_index.size()); }
};

LiftingData build_lifting(const Mesh& mesh, const std::vector<DirichletCondition>& conditions,
                          CornerRule rule = CornerRule::kReject);

/// Rows and columns of `full` belonging to free dofs.
SparseMatrix restrict_matrix(const SparseMatrix& full, const LiftingData& lifting);
/// Free rows of `full` applied to the whole vector: (A v)|_free.
Vector restrict_vector(const Vector& full, const LiftingData& lifting);
/// Free-dof vector padded with zeros on Dirichlet dofs.
Vector extend(const Vector& free_values, const LiftingData& lifting);

}  // namespace wrb::fem
