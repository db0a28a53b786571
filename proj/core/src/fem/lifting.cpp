#include "wrb/fem/lifting.hpp"

#include <cmath>
#include <map>
#include <string>

namespace wrb::fem {

LiftingData build_lifting(const Mesh& mesh, const std::vector<DirichletCondition>& conditions, CornerRule rule) {
  const int n = mesh.num_nodes();
  std::vector<int> owner(n, -1);  // index into `conditions`
  Vector values = Vector::Zero(n);

  std::map<int, int> seen_tags;
  for (std::size_t c = 0; c < conditions.size(); ++c) {
    const auto& cond = conditions[c];
    if (!cond.value) throw InvalidArgument("build_lifting: condition for tag " + std::to_string(cond.tag) + " has no value");
    if (!seen_tags.emplace(cond.tag, static_cast<int>(c)).second) {
      throw InvalidArgument("build_lifting: tag " + std::to_string(cond.tag) + " listed twice");
    }
    if (!mesh.has_boundary_tag(cond.tag)) {
      throw InvalidArgument("build_lifting: boundary tag " + std::to_string(cond.tag) + " does not exist in the mesh");
    }
    for (int node : mesh.boundary_nodes(cond.tag)) {
      const double v = cond.value(mesh.nodes[node]);
      if (owner[node] < 0) {
        owner[node] = static_cast<int>(c);
        values[node] = v;
        continue;
      }
      if (v == values[node]) continue;
      if (rule == CornerRule::kReject) {
        throw InvalidArgument("build_lifting: conflicting Dirichlet values at node " + std::to_string(node) +
                              " (tags " + std::to_string(conditions[owner[node]].tag) + " and " +
                              std::to_string(cond.tag) + ")");
      }
      if (v == 0.0) {
        owner[node] = static_cast<int>(c);
        values[node] = 0.0;
      } else if (values[node] != 0.0) {
        throw InvalidArgument("build_lifting: two nonzero Dirichlet values meet at node " + std::to_string(node));
      }
    }
  }

  LiftingData out;
  out.lifting = values;
  out.free_index.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (owner[i] >= 0) {
      out.dirichlet_dofs.push_back(i);
    } else {
      out.free_index[i] = static_cast<int>(out.free_dofs.size());
      out.free_dofs.push_back(i);
    }
  }
  return out;
}

SparseMatrix restrict_matrix(const SparseMatrix& full, const LiftingData& lifting) {
  if (full.rows() != lifting.num_nodes() || full.cols() != lifting.num_nodes()) {
    throw InvalidArgument("restrict_matrix: size mismatch with lifting data");
  }
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(full.nonZeros());
  for (int col = 0; col < full.outerSize(); ++col) {
    const int fc = lifting.free_index[col];
    if (fc < 0) continue;
    for (SparseMatrix::InnerIterator it(full, col); it; ++it) {
      const int fr = lifting.free_index[it.row()];
      if (fr >= 0) triplets.emplace_back(fr, fc, it.value());
    }
  }
  SparseMatrix out(lifting.num_free(), lifting.num_free());
  out.setFromTriplets(triplets.begin(), triplets.end());
  out.makeCompressed();
  return out;
}

Vector restrict_vector(const Vector& full, const LiftingData& lifting) {
  if (full.size() != lifting.num_nodes()) throw InvalidArgument("restrict_vector: size mismatch with lifting data");
  Vector out(lifting.num_free());
  for (int i = 0; i < lifting.num_free(); ++i) out[i] = full[lifting.free_dofs[i]];
  return out;
}

Vector extend(const Vector& free_values, const LiftingData& lifting) {
  if (free_values.size() != lifting.num_free()) throw InvalidArgument("extend: size mismatch with lifting data");
  Vector out = Vector::Zero(lifting.num_nodes());
  for (int i = 0; i < lifting.num_free(); ++i) out[lifting.free_dofs[i]] = free_values[i];
  return out;
}

}  // namespace wrb::fem
