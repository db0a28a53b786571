#include <gtest/gtest.h>

#include <Eigen/SparseCholesky>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "wrb/problems/benchmarks.hpp"
#include "wrb/problems/truth.hpp"
#include "wrb/rb/coercivity.hpp"
#include "wrb/rb/greedy.hpp"
#include "wrb/rb/online.hpp"
#include "wrb/rb/orthonormal.hpp"

using namespace wrb;
using namespace wrb::rb;
using problems::TruthProblem;

namespace {

TruthProblem small_graetz(int nx = 24, int ny = 12) {
  problems::GraetzOptions o;
  o.nx = nx;
  o.ny = ny;
  o.domain = {{1e2, 0.5}, {1e5, 4.0}};
  return problems::build_graetz(o);
}

std::vector<Parameter> log_uniform(const ParameterBox& box, int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Parameter> out;
  for (int i = 0; i < n; ++i) {
    const double a = std::log10(box.lower[0]), b = std::log10(box.upper[0]);
    out.push_back({std::pow(10.0, a + (b - a) * u(rng)), box.lower[1] + (box.upper[1] - box.lower[1]) * u(rng)});
  }
  return out;
}

double riesz_norm(const TruthProblem& p, const Vector& r) {
  Eigen::SimplicialLDLT<SparseMatrix> x(p.x_inner);
  return std::sqrt(r.dot(x.solve(r)));
}

}  // namespace

TEST(Orthonormal, GramIdentityAndRejection) {
  const TruthProblem p = small_graetz(12, 6);
  XOrthonormalSet set(&p.x_inner);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  std::vector<Vector> added;
  for (int k = 0; k < 8; ++k) {
    Vector v(p.num_free());
    for (auto& c : v) c = g(rng);
    ASSERT_TRUE(set.append(v));
    added.push_back(v);
  }
  const Matrix& V = set.vectors();
  const Matrix gram = V.transpose() * (p.x_inner * V);
  EXPECT_LT((gram - Matrix::Identity(8, 8)).norm(), 1e-10);
  EXPECT_LT((set.x_vectors() - Matrix(p.x_inner * V)).norm(), 1e-10 * V.norm());
  const Vector combo = 2.0 * added[1] - 0.5 * added[6];
  EXPECT_FALSE(set.append(combo));
  EXPECT_EQ(set.size(), 8);
  EXPECT_FALSE(set.append(Vector::Zero(p.num_free())));
}

TEST(Coercivity, KrylovEigenvalueMatchesDense) {
  const TruthProblem p = small_graetz(12, 6);
  const Parameter ref = default_coercivity_reference(p);
  const SparseMatrix D = problems::energy_matrix(p, ref);
  const double dense = oracle::dense_smallest_eigenvalue(D, p.x_inner);
  EXPECT_NEAR(smallest_generalized_eigenvalue(D, p.x_inner), dense, 1e-8 * dense);
  const CoercivityData data = compute_coercivity(p, ref);
  EXPECT_NEAR(data.alpha_reference, dense, 1e-8 * dense);
}

TEST(Coercivity, LowerBoundIsBelowTrueConstant) {
  const TruthProblem p = small_graetz(12, 6);
  const CoercivityData data = compute_coercivity(p, default_coercivity_reference(p));
  for (const auto& mu : log_uniform(p.domain, 12, 5)) {
    const double exact = oracle::dense_smallest_eigenvalue(problems::energy_matrix(p, mu), p.x_inner);
    const double lb = coercivity_lower_bound(p, data, mu);
    EXPECT_GT(lb, 0.0);
    EXPECT_LE(lb, exact * (1.0 + 1e-10)) << to_string(mu);
  }
  EXPECT_NEAR(coercivity_lower_bound(p, data, data.reference), data.alpha_reference, 1e-14);
}

TEST(ReducedSpace, BlocksAreGalerkinProjections) {
  const TruthProblem p = small_graetz();
  ReducedSpaceBuilder b(p, compute_coercivity(p, default_coercivity_reference(p)));
  for (const auto& mu : log_uniform(p.domain, 4, 7)) ASSERT_TRUE(b.append(problems::truth_solve_free(p, mu, true)));
  const ReducedSpace s = b.space();
  const Matrix& V = s.basis;
  for (std::size_t q = 0; q < s.a.size(); ++q) {
    const Matrix ref = V.transpose() * (p.decomposition.a[q].op * V);
    EXPECT_LT((s.a[q] - ref).norm(), 1e-12 * std::max(1.0, ref.norm()));
  }
  for (std::size_t q = 0; q < s.f.size(); ++q) {
    const Vector ref = V.transpose() * p.decomposition.f[q].op;
    EXPECT_LT((s.f[q] - ref).norm(), 1e-12 * std::max(1.0, ref.norm()));
  }
}

TEST(ReducedSpace, TruncationMatchesSmallerBuild) {
  const TruthProblem p = small_graetz();
  const auto mus = log_uniform(p.domain, 5, 8);
  const CoercivityData c = compute_coercivity(p, default_coercivity_reference(p));
  ReducedSpaceBuilder big(p, c), small(p, c);
  for (std::size_t i = 0; i < mus.size(); ++i) {
    const Vector u = problems::truth_solve_free(p, mus[i], true);
    big.append(u);
    if (i < 3) small.append(u);
  }
  const ReducedSpace t = truncate(big.space(), 3);
  const ReducedSpace s = small.space();
  for (const auto& mu : log_uniform(p.domain, 5, 9)) {
    const auto th = problems::evaluate_thetas(p, mu);
    const Vector ct = rb_solve(t, th, true), cs = rb_solve(s, th, true);
    EXPECT_LT((ct - cs).norm(), 1e-9 * cs.norm());
    EXPECT_NEAR(residual_norm(t, th, ct, true), residual_norm(s, th, cs, true), 1e-9 * residual_norm(s, th, cs, true));
  }
}

TEST(Online, ResidualNormMatchesRieszRepresenter) {
  const TruthProblem p = small_graetz();
  ReducedSpaceBuilder b(p, compute_coercivity(p, default_coercivity_reference(p)));
  for (const auto& mu : log_uniform(p.domain, 6, 10)) b.append(problems::truth_solve_free(p, mu, true));
  const ReducedSpace s = b.space();
  for (bool stab : {true, false}) {
    for (const auto& mu : log_uniform(p.domain, 6, 11)) {
      const Vector c = rb_solve(p, s, mu, stab);
      const Vector r = problems::system_rhs(p, mu, stab) - problems::system_matrix(p, mu, stab) * reconstruct(s, c);
      const double direct = riesz_norm(p, r);
      EXPECT_NEAR(residual_norm(s, problems::evaluate_thetas(p, mu), c, stab), direct, 1e-8 * direct);
    }
  }
}

TEST(Online, EstimatorBoundsStabilizedError) {
  const TruthProblem p = small_graetz();
  GreedyOptions o;
  o.max_basis = 6;
  o.tolerance = 0.0;
  const GreedyResult g = greedy(p, log_uniform(p.domain, 40, 12), {}, o);
  for (const auto& mu : log_uniform(p.domain, 30, 13)) {
    const Vector c = rb_solve(p, g.space, mu, true);
    const double err = energy_norm(p, mu, problems::truth_solve_free(p, mu, true) - reconstruct(g.space, c));
    const double est = error_estimator(p, g.space, mu, c, true);
    EXPECT_LE(err, est * (1.0 + 1e-10)) << to_string(mu);
  }
}

TEST(Online, EmptySpaceAndBadInput) {
  const TruthProblem p = small_graetz(8, 4);
  ReducedSpaceBuilder b(p, compute_coercivity(p, default_coercivity_reference(p)));
  const ReducedSpace s = b.space();
  EXPECT_THROW(rb_solve(p, s, {1e3, 1.0}, true), InvalidArgument);
  EXPECT_THROW(b.append(Vector::Ones(3)), InvalidArgument);
  // With N = 0 the residual is ‖F‖.
  const auto th = problems::evaluate_thetas(p, {1e3, 1.0});
  EXPECT_NEAR(residual_norm(s, th, Vector(0), true), riesz_norm(p, problems::system_rhs(p, {1e3, 1.0}, true)),
              1e-8 * riesz_norm(p, problems::system_rhs(p, {1e3, 1.0}, true)));
}

TEST(Greedy, ArgmaxFirstWinsTies) {
  EXPECT_EQ(argmax_first({1.0, 3.0, 3.0, 2.0}), 1u);
  EXPECT_EQ(argmax_first({5.0}), 0u);
  EXPECT_THROW(argmax_first({}), InvalidArgument);
}

TEST(Greedy, ConvergesAndTracesEveryIteration) {
  const TruthProblem p = small_graetz();
  GreedyOptions o;
  o.max_basis = 10;
  o.tolerance = 0.0;
  o.trace_true_error = true;
  const GreedyResult g = greedy(p, log_uniform(p.domain, 60, 14), {}, o);
  ASSERT_EQ(g.trace.records.size(), 10u);
  for (std::size_t i = 0; i < g.trace.records.size(); ++i) EXPECT_EQ(g.trace.records[i].n, static_cast<int>(i) + 1);
  EXPECT_LT(g.trace.records.back().max_estimator, g.trace.initial_max_estimator / 100.0);
  EXPECT_LT(g.trace.records.back().max_true_error, g.trace.records.front().max_true_error);
  for (const auto& r : g.trace.records) EXPECT_LE(r.max_true_error, r.max_estimator * (1 + 1e-10));
  EXPECT_EQ(g.space.selected.size(), 10u);
}

TEST(Greedy, StopsAtToleranceAndRemovesRejectedParameters) {
  const TruthProblem p = small_graetz(12, 6);
  GreedyOptions o;
  o.max_basis = 5;
  o.tolerance = 0.0;
  const std::vector<Parameter> training{{1e3, 1.0}, {1e4, 2.0}};
  const GreedyResult g = greedy(p, training, {}, o);
  EXPECT_EQ(g.space.size(), 2);
  EXPECT_EQ(g.trace.rejected.size(), 2u);

  o.tolerance = 1e300;
  EXPECT_EQ(greedy(p, training, {}, o).space.size(), 0);
  EXPECT_THROW(greedy(p, {}, {}, o), InvalidArgument);
  EXPECT_THROW(greedy(p, training, [](const Parameter&) { return -1.0; }, o), InvalidArgument);
}
