#pragma once

#include "wrb/common.hpp"
#include "wrb/problems/problem.hpp"

namespace wrb::rb {

/// α(μ̄) = λ_min(D(μ̄), X) at a reference parameter μ̄.
struct CoercivityData {
  Parameter reference;
  double alpha_reference = 0.0;
};

struct EigenOptions {
  int krylov_dimension = 40;
  int max_restarts = 50;
  double tolerance = 1e-11;  // relative eigen-residual
  unsigned seed = 12345;
};

/// Smallest λ with A v = λ B v for sparse SPD A and B (Krylov–Rayleigh–Ritz on
/// A⁻¹B with restarts).
double smallest_generalized_eigenvalue(const SparseMatrix& A, const SparseMatrix& B, const EigenOptions& options = {});

CoercivityData compute_coercivity(const problems::TruthProblem& problem, const Parameter& reference,
                                  const EigenOptions& options = {});

/// Center of the problem's parameter box.
Parameter default_coercivity_reference(const problems::TruthProblem& problem);

/// α_LB(μ) = min_q θ_q(μ)/θ_q(μ̄) · α(μ̄) over the diffusion terms.
double coercivity_lower_bound(const problems::TruthProblem& problem, const CoercivityData& data, const Parameter& mu);

}  // namespace wrb::rb
