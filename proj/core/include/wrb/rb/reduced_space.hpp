#pragma once

#include <Eigen/SparseCholesky>
#include <string>
#include <vector>

#include "wrb/common.hpp"
#include "wrb/problems/problem.hpp"
#include "wrb/rb/coercivity.hpp"
#include "wrb/rb/orthonormal.hpp"

namespace wrb::rb {

/// Reduced basis with all projected affine blocks and residual data.
///
/// Residual data: let W be an X-orthonormal basis of the Riesz representers of
/// every residual piece (f_q, r_q, A_q ξ_n, S_q ξ_n, M_q ξ_n, ...). Each piece p
/// is stored through its coordinates Wᵀp, so ‖r̂‖_X is the Euclidean norm of a
/// θ-weighted combination of short vectors.
struct ReducedSpace {
  std::string problem_id;
  int num_free = 0;
  Matrix basis;  // num_free × N, X-orthonormal
  std::vector<Parameter> selected;

  std::vector<Matrix> a, s, m, m_stab;  // N × N
  std::vector<Vector> f, r;             // N

  Matrix res_f, res_r;                                     // K × Q
  std::vector<Matrix> res_a, res_s, res_m, res_m_stab;     // K × N

  CoercivityData coercivity;

  // Parabolic initial data ũ0: reduced coordinates c0 = Vᵀ X ũ0 and the pieces
  // of the plain-mass energy of ũ0 − V c0 per mass term.
  bool has_initial = false;
  Vector initial;
  std::vector<double> initial_mass_self;  // ũ0ᵀ M_q ũ0
  std::vector<Vector> initial_mass_cross; // Vᵀ M_q ũ0

  [[nodiscard]] int size() const { return static_cast<int>(basis.cols()); }
  [[nodiscard]] int residual_rank() const { return static_cast<int>(res_f.rows()); }
};

/// Leading-n subspace (all blocks sliced, residual data unchanged in rank).
ReducedSpace truncate(const ReducedSpace& space, int n);

/// Incremental offline construction: Gram–Schmidt appends with automatic
/// projection of all affine terms and residual representers.
class ReducedSpaceBuilder {
 public:
  ReducedSpaceBuilder(const problems::TruthProblem& problem, CoercivityData coercivity);

  /// Returns false when v is (numerically) in the current span.
  bool append(const Vector& v);
  void add_selected(const Parameter& mu) { selected_.push_back(mu); }
  /// Registers the homogenized initial state ũ0 (parabolic problems).
  void set_initial(const Vector& initial_free);

  [[nodiscard]] int size() const { return basis_.size(); }
  [[nodiscard]] const Matrix& basis() const { return basis_.vectors(); }
  [[nodiscard]] const Matrix& x_basis() const { return basis_.x_vectors(); }
  /// Snapshot of the current space.
  [[nodiscard]] ReducedSpace space() const;

 private:
  struct PieceGroup {
    const std::vector<problems::MatrixTerm>* terms;
    std::vector<std::vector<int>> columns;  // [q][n] -> column in pieces_
  };

  int add_piece(const Vector& p);

  const problems::TruthProblem* problem_;
  CoercivityData coercivity_;
  XOrthonormalSet basis_;
  XOrthonormalSet representers_;
  Eigen::SimplicialLDLT<SparseMatrix> x_solver_;
  std::vector<Vector> pieces_;
  Matrix coordinates_;  // K × P, Wᵀ pieces
  std::vector<int> f_columns_, r_columns_;
  std::vector<PieceGroup> groups_;  // a, s, m, m_stab
  std::vector<Parameter> selected_;
  bool has_initial_ = false;
  Vector initial_free_;
};

}  // namespace wrb::rb
