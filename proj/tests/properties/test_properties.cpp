// Property suites: randomized invariants on small meshes, no benchmark runs.
#include <gtest/gtest.h>

#include <Eigen/SparseCholesky>
#include <cmath>
#include <random>

#include "wrb/fem/assembly.hpp"
#include "wrb/fem/lifting.hpp"
#include "wrb/parabolic/pod.hpp"
#include "wrb/parabolic/pod_greedy.hpp"
#include "wrb/problems/benchmarks.hpp"
#include "wrb/problems/truth.hpp"
#include "wrb/rb/coercivity.hpp"
#include "wrb/rb/greedy.hpp"
#include "wrb/rb/online.hpp"
#include "wrb/rb/orthonormal.hpp"
#include "wrb/stochastic/distribution.hpp"
#include "wrb/stochastic/evaluation.hpp"

using namespace wrb;
using problems::TruthProblem;
using stochastic::ComponentLaw;
using stochastic::ParamDistribution;

namespace {

Vector random_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector v(n);
  for (auto& c : v) c = g(rng);
  return v;
}

const TruthProblem& graetz() {
  static const TruthProblem p = [] {
    problems::GraetzOptions o;
    o.nx = 24;
    o.ny = 12;
    o.domain = {{10.0, 0.5}, {1e6, 4.0}};
    return problems::build_graetz(o);
  }();
  return p;
}

const TruthProblem& square() {
  static const TruthProblem p = [] {
    problems::FrontSquareOptions o;
    o.nx = 20;
    o.ny = 20;
    return problems::build_front_square(o);
  }();
  return p;
}

ParamDistribution graetz_law() {
  return ParamDistribution({ComponentLaw::log_beta(1, 5, 4, 2), ComponentLaw::affine_beta(0.5, 4, 3, 4)});
}

ParamDistribution square_law() {
  return ParamDistribution({ComponentLaw::log_beta(0, 6, 4, 2), ComponentLaw::affine_beta(0, 1.57, 3, 4)});
}

double riesz_norm(const TruthProblem& p, const Vector& r) {
  static thread_local const SparseMatrix* cached = nullptr;
  static thread_local Eigen::SimplicialLDLT<SparseMatrix> solver;
  if (cached != &p.x_inner) {
    solver.compute(p.x_inner);
    cached = &p.x_inner;
  }
  return std::sqrt(r.dot(solver.solve(r)));
}

rb::GreedyOptions greedy_options(int n) {
  rb::GreedyOptions o;
  o.max_basis = n;
  o.tolerance = 0.0;
  return o;
}

}  // namespace

// ---- finite elements ----

TEST(FemProperties, MassPartitionOfUnityAndStiffnessKernel) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double x0 = u(rng) - 1.0, y0 = u(rng) - 1.0, w = u(rng), h = u(rng);
    const fem::Mesh m = fem::build_structured_mesh({x0, x0 + w, y0, y0 + h}, 3 + trial, 2 + 2 * trial);
    const SparseMatrix M = fem::assemble_matrix(m, {.kind = fem::TermKind::kMass});
    EXPECT_NEAR(Vector::Ones(m.num_nodes()).dot(M * Vector::Ones(m.num_nodes())), w * h, 1e-12 * w * h);
    for (auto kind : {fem::TermKind::kDiffusionFull, fem::TermKind::kDiffusionXX, fem::TermKind::kDiffusionYY}) {
      const SparseMatrix K = fem::assemble_matrix(m, {.kind = kind});
      const Vector k1 = K * Vector::Ones(m.num_nodes());
      EXPECT_LE(k1.norm(), 1e-12 * std::max(1.0, Matrix(K).norm()));
    }
  }
}

TEST(FemProperties, StreamlineTermIsPositiveSemidefinite) {
  const fem::Mesh m = fem::build_structured_mesh({0.0, 2.0, 0.0, 1.0}, 16, 8);
  const SparseMatrix S = fem::assemble_matrix(
      m, {.kind = fem::TermKind::kSupgAdvectionAdvection, .advection = problems::graetz_velocity,
          .scaling = fem::SupgScaling::kDiameter});
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const Vector v = random_vector(m.num_nodes(), rng);
    EXPECT_GE(v.dot(S * v), -1e-13 * v.squaredNorm());
  }
}

TEST(FemProperties, SquareAdvectionIsSkewOnFreeDofs) {
  const TruthProblem& p = square();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(0.0, 1.57);
  for (int i = 0; i < 20; ++i) {
    const double a = angle(rng);
    const SparseMatrix A = std::cos(a) * p.decomposition.a[1].op + std::sin(a) * p.decomposition.a[2].op;
    const Vector v = random_vector(p.num_free(), rng);
    EXPECT_LE(std::abs(2.0 * v.dot(A * v)), 1e-10 * v.squaredNorm());
  }
}

// ---- Gram–Schmidt ----

TEST(OrthonormalProperties, GramIdentityAndNovelty) {
  const TruthProblem& p = graetz();
  for (unsigned seed = 0; seed < 5; ++seed) {
    std::mt19937_64 rng(seed);
    rb::XOrthonormalSet set(&p.x_inner);
    const int count = 5 + 5 * static_cast<int>(seed);
    for (int k = 0; k < count; ++k) {
      const Matrix before = set.vectors();
      // Nearly dependent inputs stress the reorthogonalization pass.
      Vector v = random_vector(p.num_free(), rng);
      if (k > 0) v = 1e-6 * v + set.vectors() * random_vector(set.size(), rng);
      ASSERT_TRUE(set.append(v));
      if (k > 0) {
        const Vector cross = before.transpose() * (p.x_inner * set.vectors().col(k));
        EXPECT_LE(cross.cwiseAbs().maxCoeff(), 1e-10);
      }
    }
    const Matrix& V = set.vectors();
    EXPECT_LE((V.transpose() * (p.x_inner * V) - Matrix::Identity(count, count)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_FALSE(set.append(V * random_vector(count, rng)));
  }
}

// ---- POD ----

TEST(PodProperties, RecoversRankOfSnapshotSets) {
  const TruthProblem& p = graetz();
  for (int rank : {1, 2, 4, 7}) {
    for (unsigned seed = 0; seed < 3; ++seed) {
      std::mt19937_64 rng(100 * rank + seed);
      std::vector<Vector> basis;
      for (int i = 0; i < rank; ++i) basis.push_back(random_vector(p.num_free(), rng));
      std::vector<Vector> snaps;
      for (int s = 0; s < 3 * rank + 5; ++s) {
        Vector v = Vector::Zero(p.num_free());
        for (const auto& b : basis) v += random_vector(1, rng)[0] * b;
        snaps.push_back(v);
      }
      const auto r = parabolic::pod(snaps, p.x_inner, 50, 1.0 - 1e-12);
      ASSERT_EQ(r.modes.cols(), rank);
      const Matrix& W = r.modes;
      EXPECT_LE((W.transpose() * (p.x_inner * W) - Matrix::Identity(rank, rank)).cwiseAbs().maxCoeff(), 1e-10);
      for (const auto& v : snaps) {
        const Vector e = v - W * (W.transpose() * (p.x_inner * v));
        EXPECT_LE(std::sqrt(e.dot(p.x_inner * e)), 1e-9 * std::sqrt(v.dot(p.x_inner * v)));
      }
    }
  }
}

TEST(PodProperties, PodGreedyKeepsBasisOrthonormal) {
  problems::FrontSquareOptions o;
  o.nx = 12;
  o.ny = 12;
  o.transient = true;
  o.steps = 10;
  const TruthProblem p = problems::build_front_square(o);
  parabolic::PodGreedyOptions go;
  go.max_basis = 9;
  go.tolerance = 0.0;
  go.modes_per_iteration = 3;
  const auto g = parabolic::pod_greedy(p, square_law().sample(8, 4), {}, go);
  const Matrix& V = g.space.basis;
  const Eigen::Index n = V.cols();
  EXPECT_LE((V.transpose() * (p.x_inner * V) - Matrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10);
  int prev = 1;
  for (const auto& r : g.trace.records) {
    EXPECT_GT(r.n, prev);
    EXPECT_LE(r.n - prev, go.modes_per_iteration);
    prev = r.n;
  }
}

// ---- residuals and estimators ----

TEST(EstimatorProperties, GramExpansionMatchesRieszRepresenter) {
  for (const TruthProblem* p : {&graetz(), &square()}) {
    const auto dist = p == &graetz() ? graetz_law() : square_law();
    const auto g = rb::greedy(*p, dist.sample(30, 5), {}, greedy_options(6));
    for (bool stab : {true, false}) {
      for (const auto& mu : dist.sample(20, 6)) {
        const Vector c = rb::rb_solve(*p, g.space, mu, stab);
        const Vector r = problems::system_rhs(*p, mu, stab) - problems::system_matrix(*p, mu, stab) * rb::reconstruct(g.space, c);
        const double direct = riesz_norm(*p, r);
        EXPECT_NEAR(rb::residual_norm(g.space, problems::evaluate_thetas(*p, mu), c, stab), direct, 1e-8 * direct)
            << p->id << " " << to_string(mu);
      }
    }
  }
}

TEST(EstimatorProperties, SnapshotReproduction) {
  for (const TruthProblem* p : {&graetz(), &square()}) {
    const auto dist = p == &graetz() ? graetz_law() : square_law();
    rb::GreedyOptions o = greedy_options(8);
    o.trace_true_error = true;
    const auto g = rb::greedy(*p, dist.sample(30, 7), {}, o);
    const double est0 = g.trace.initial_max_estimator;
    const double err0 = g.trace.initial_max_true_error;
    ASSERT_GT(est0, 0.0);
    for (const auto& mu : g.space.selected) {
      const Vector c = rb::rb_solve(*p, g.space, mu, true);
      EXPECT_LE(rb::error_estimator(*p, g.space, mu, c, true), 1e-8 * est0) << p->id;
      const double err = rb::energy_norm(*p, mu, problems::truth_solve_free(*p, mu, true) - rb::reconstruct(g.space, c));
      EXPECT_LE(err, 1e-8 * err0) << p->id;
    }
  }
}

TEST(EstimatorProperties, DominanceAndMonotoneTrace) {
  const TruthProblem& p = graetz();
  const auto dist = graetz_law();
  const auto g = rb::greedy(p, dist.sample(40, 8), stochastic::sqrt_density_weight(dist), greedy_options(8));
  double prev = g.trace.initial_max_weighted_estimator;
  for (const auto& r : g.trace.records) {
    EXPECT_LE(r.max_weighted_estimator, prev + 1e-10 * g.trace.initial_max_weighted_estimator);
    prev = r.max_weighted_estimator;
  }
  const auto pts = stochastic::evaluate_points(p, g.space, dist.sample(60, 9));
  double est2 = 0.0, err2 = 0.0;
  for (const auto& t : pts) {
    EXPECT_LE(t.error, t.estimator * (1 + 1e-10));
    est2 += t.estimator * t.estimator;
    err2 += t.error * t.error;
  }
  EXPECT_GE(est2, err2);
}

// ---- greedy selection ----

TEST(GreedyProperties, WeightScalingLeavesSelectionUnchanged) {
  const TruthProblem& p = graetz();
  const auto dist = graetz_law();
  const auto training = dist.sample(40, 10);
  const auto w = stochastic::sqrt_density_weight(dist);
  const auto a = rb::greedy(p, training, w, greedy_options(8));
  const auto b = rb::greedy(p, training, [&](const Parameter& mu) { return 7.3 * w(mu); }, greedy_options(8));
  EXPECT_EQ(a.space.selected, b.space.selected);
}

TEST(GreedyProperties, SeedDeterminism) {
  const TruthProblem& p = graetz();
  const auto dist = graetz_law();
  EXPECT_EQ(dist.sample(200, 11), dist.sample(200, 11));
  EXPECT_EQ(dist.sample_uniform(200, 11), dist.sample_uniform(200, 11));
  const auto a = rb::greedy(p, dist.sample(30, 12), stochastic::sqrt_density_weight(dist), greedy_options(6));
  const auto b = rb::greedy(p, dist.sample(30, 12), stochastic::sqrt_density_weight(dist), greedy_options(6));
  EXPECT_EQ(a.space.selected, b.space.selected);
  ASSERT_EQ(a.trace.records.size(), b.trace.records.size());
  for (std::size_t i = 0; i < a.trace.records.size(); ++i) {
    EXPECT_EQ(a.trace.records[i].max_weighted_estimator, b.trace.records[i].max_weighted_estimator);
  }
  EXPECT_EQ(Matrix(a.space.basis - b.space.basis).cwiseAbs().maxCoeff(), 0.0);
}

// ---- Monte Carlo ----

TEST(MonteCarloProperties, SamplingModesAgree) {
  problems::GraetzOptions o;
  o.nx = 16;
  o.ny = 8;
  o.domain = {{10.0, 0.5}, {1e6, 4.0}};
  const TruthProblem p = problems::build_graetz(o);
  const auto dist = graetz_law();
  const auto g = rb::greedy(p, dist.sample(30, 13), {}, greedy_options(3));
  const auto beta = stochastic::mc_mean_error(p, g.space, dist, 2000, stochastic::McMode::kBetaSampled, 14);
  const auto unif = stochastic::mc_mean_error(p, g.space, dist, 2000, stochastic::McMode::kUniformImportance, 15);
  const double se = std::hypot(beta.standard_error, unif.standard_error);
  EXPECT_LE(std::abs(beta.mean - unif.mean), 3.0 * se);
}
