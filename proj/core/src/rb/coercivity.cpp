#include "wrb/rb/coercivity.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <cmath>
#include <limits>
#include <random>

namespace wrb::rb {

double smallest_generalized_eigenvalue(const SparseMatrix& A, const SparseMatrix& B, const EigenOptions& o) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n || B.rows() != n || B.cols() != n) throw InvalidArgument("eigen solve: size mismatch");
  if (n == 0) throw InvalidArgument("eigen solve: empty matrices");
  Eigen::SimplicialLDLT<SparseMatrix> solver(A);
  if (solver.info() != Eigen::Success) throw NumericalFailure("eigen solve: LDLT factorization of A failed");
  if ((solver.vectorD().array() <= 0.0).any()) throw NumericalFailure("eigen solve: A is not positive definite");

  // Ritz values of A⁻¹B approach 1/λ_min from below; the spectrum of A⁻¹B
  // clusters near its lower end here, which Krylov spaces handle well.
  const int m = static_cast<int>(std::min<Eigen::Index>(o.krylov_dimension, n));
  std::mt19937_64 rng(o.seed);
  std::normal_distribution<double> normal;
  Vector start(n);
  for (Eigen::Index i = 0; i < n; ++i) start[i] = normal(rng);

  double lambda = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart <= o.max_restarts; ++restart) {
    Matrix Q(n, m);
    Matrix BQ(n, m);
    int k = 0;
    Vector v = start;
    for (; k < m; ++k) {
      Vector bv = B * v;
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i < k; ++i) {
          const double c = BQ.col(i).dot(v);
          v -= c * Q.col(i);
        }
        bv = B * v;
      }
      const double nrm = std::sqrt(std::max(0.0, v.dot(bv)));
      if (!(nrm > 1e-14 * std::sqrt(std::max(1e-300, start.dot(B * start))))) break;
      Q.col(k) = v / nrm;
      BQ.col(k) = bv / nrm;
      v = solver.solve(BQ.col(k));
    }
    if (k == 0) throw NumericalFailure("eigen solve: degenerate start vector");
    const Matrix Qk = Q.leftCols(k);
    const Matrix Ared = Qk.transpose() * (A * Qk);
    const Matrix Bred = Qk.transpose() * BQ.leftCols(k);
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(0.5 * (Ared + Ared.transpose()),
                                                         0.5 * (Bred + Bred.transpose()));
    if (ges.info() != Eigen::Success) throw NumericalFailure("eigen solve: projected eigenproblem failed");
    lambda = ges.eigenvalues()[0];
    const Vector x = Qk * ges.eigenvectors().col(0);
    const Vector bx = B * x;
    const Vector res = A * x - lambda * bx;
    // Residual measured in the B⁻¹-norm scale via the A⁻¹ preconditioned size.
    const double rel = solver.solve(res).norm() / x.norm();
    if (rel <= o.tolerance || k < m) return lambda;
    start = x;
  }
  return lambda;
}

CoercivityData compute_coercivity(const problems::TruthProblem& problem, const Parameter& reference,
                                  const EigenOptions& options) {
  const SparseMatrix D = problems::energy_matrix(problem, reference);
  CoercivityData data;
  data.reference = reference;
  data.alpha_reference = smallest_generalized_eigenvalue(D, problem.x_inner, options);
  if (!(data.alpha_reference > 0.0)) throw NumericalFailure(problem.id + ": nonpositive coercivity constant");
  return data;
}

Parameter default_coercivity_reference(const problems::TruthProblem& problem) {
  Parameter mu(problem.domain.dimension());
  for (std::size_t i = 0; i < mu.size(); ++i) mu[i] = 0.5 * (problem.domain.lower[i] + problem.domain.upper[i]);
  return mu;
}

double coercivity_lower_bound(const problems::TruthProblem& problem, const CoercivityData& data, const Parameter& mu) {
  problems::check_parameter(problem, mu);
  if (!(data.alpha_reference > 0.0)) throw NumericalFailure(problem.id + ": coercivity data not initialized");
  double ratio = std::numeric_limits<double>::infinity();
  for (int q : problem.decomposition.diffusion_terms) {
    const auto& term = problem.decomposition.a[q];
    const double num = term.theta(mu);
    const double den = term.theta(data.reference);
    if (!(den > 0.0)) throw NumericalFailure(problem.id + ": diffusion coefficient '" + term.name +
                                             "' is not positive at the reference parameter");
    ratio = std::min(ratio, num / den);
  }
  const double alpha = ratio * data.alpha_reference;
  if (!(alpha > 0.0)) throw NumericalFailure(problem.id + ": nonpositive coercivity bound at " + to_string(mu));
  return alpha;
}

}  // namespace wrb::rb
