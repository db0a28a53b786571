#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wrb/common.hpp"
#include "wrb/fem/assembly.hpp"
#include "wrb/fem/lifting.hpp"
#include "wrb/fem/mesh.hpp"

namespace wrb::problems {

using ThetaFn = std::function<double(const Parameter&)>;

template <class Op>
struct AffineTerm {
  std::string name;
  ThetaFn theta;
  Op op;
};

using MatrixTerm = AffineTerm<SparseMatrix>;
using VectorTerm = AffineTerm<Vector>;

/// Parameter-separable forms, all restricted to free dofs.
///   a       plain bilinear form
///   s       SUPG additions (a_stab = a + s)
///   f, r    plain right side and SUPG right-side additions
///   m       mass, m_stab SUPG mass additions (transient only)
struct AffineDecomposition {
  std::vector<MatrixTerm> a;
  std::vector<MatrixTerm> s;
  std::vector<VectorTerm> f;
  std::vector<VectorTerm> r;
  std::vector<MatrixTerm> m;
  std::vector<MatrixTerm> m_stab;
  /// a-term indices forming the diffusion Gram matrix (energy norm).
  std::vector<int> diffusion_terms;
};

/// Coefficients θ_q(μ) for every list of an AffineDecomposition.
struct Thetas {
  std::vector<double> a, s, f, r, m, m_stab;
};

/// Time-stepping data for parabolic runs.
struct TimeGrid {
  double dt = 0.0;
  int steps = 0;
  std::function<double(double)> control;

  void validate() const;
  [[nodiscard]] double time(int j) const { return j * dt; }
};

struct TransientSetup {
  TimeGrid grid;
  fem::ScalarField initial;  // u0 on the reference domain
};

struct TruthProblem {
  std::string id;
  fem::Mesh mesh;
  fem::LiftingData lifting;
  AffineDecomposition decomposition;
  ParameterBox domain;
  SparseMatrix x_inner;          // ∫∇u·∇v + uv on free dofs
  SparseMatrix reference_mass;   // ∫uv on free dofs, μ-independent
  SparseMatrix full_mass;        // ∫uv on all nodes
  /// Σ θ_q G_q on all nodes gives ‖β·∇u‖²_{L²(Ω_p(μ))} = uᵀ G u.
  std::vector<MatrixTerm> streamline_gram;
  std::function<double(const Parameter&)> hmax;  // largest physical element diameter
  double beta_sup = 1.0;                           // ‖β‖_{L∞}
  std::optional<TransientSetup> transient;

  [[nodiscard]] int num_free() const { return lifting.num_free(); }
  [[nodiscard]] bool is_parabolic() const { return !decomposition.m.empty(); }
};

/// Throws InvalidArgument when μ is outside the problem's box.
void check_parameter(const TruthProblem& problem, const Parameter& mu);

Thetas evaluate_thetas(const TruthProblem& problem, const Parameter& mu);

SparseMatrix combine(const std::vector<MatrixTerm>& terms, const std::vector<double>& theta);
Vector combine(const std::vector<VectorTerm>& terms, const std::vector<double>& theta);

/// Σ θ_a A_q (+ Σ θ_s S_q when stabilized).
SparseMatrix system_matrix(const TruthProblem& problem, const Parameter& mu, bool stabilized);
Vector system_rhs(const TruthProblem& problem, const Parameter& mu, bool stabilized);
SparseMatrix mass_matrix(const TruthProblem& problem, const Parameter& mu, bool stabilized);
/// Diffusion Gram D(μ) inducing the energy norm |||·|||_μ.
SparseMatrix energy_matrix(const TruthProblem& problem, const Parameter& mu);
SparseMatrix streamline_matrix(const TruthProblem& problem, const Parameter& mu);

/// Assembles affine terms and the Dirichlet lifting into a TruthProblem.
class ProblemBuilder {
 public:
  ProblemBuilder(std::string id, fem::Mesh mesh, const std::vector<fem::DirichletCondition>& dirichlet,
                 fem::CornerRule corner_rule, ParameterBox domain);

  ProblemBuilder& add_a(std::string name, ThetaFn theta, const fem::TermDescriptor& term, bool diffusion = false);
  ProblemBuilder& add_s(std::string name, ThetaFn theta, const fem::TermDescriptor& term);
  ProblemBuilder& add_m(std::string name, ThetaFn theta, const fem::TermDescriptor& term);
  ProblemBuilder& add_m_stab(std::string name, ThetaFn theta, const fem::TermDescriptor& term);
  /// Source contributions; rhs-source goes to f, rhs-supg to r.
  ProblemBuilder& add_source(std::string name, ThetaFn theta, const fem::TermDescriptor& term);
  ProblemBuilder& add_streamline(std::string name, ThetaFn theta, const fem::TermDescriptor& term);
  ProblemBuilder& set_hmax(std::function<double(const Parameter&)> hmax);
  ProblemBuilder& set_beta_sup(double value);
  ProblemBuilder& set_transient(TransientSetup setup);

  /// Appends lifting terms F = −a_stab(l, ·) per affine term and finalizes.
  TruthProblem build();

 private:
  SparseMatrix restricted(const fem::TermDescriptor& term, SparseMatrix* full_out = nullptr) const;

  TruthProblem problem_;
  std::vector<std::pair<std::string, ThetaFn>> a_full_names_;
  std::vector<SparseMatrix> a_full_;
  std::vector<std::pair<std::string, ThetaFn>> s_full_names_;
  std::vector<SparseMatrix> s_full_;
  std::vector<VectorTerm> f_sources_;
  std::vector<VectorTerm> r_sources_;
};

}  // namespace wrb::problems
