#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "wrb/fem/lifting.hpp"
#include "wrb/problems/benchmarks.hpp"
#include "wrb/problems/truth.hpp"

using namespace wrb;
using namespace wrb::problems;

namespace {

std::vector<Parameter> random_parameters(const ParameterBox& box, int n, unsigned seed, bool log_first) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Parameter> out;
  for (int i = 0; i < n; ++i) {
    Parameter mu(2);
    mu[0] = log_first ? std::pow(10.0, std::log10(box.lower[0]) +
                                           u(rng) * (std::log10(box.upper[0]) - std::log10(box.lower[0])))
                      : box.lower[0] + u(rng) * (box.upper[0] - box.lower[0]);
    mu[1] = box.lower[1] + u(rng) * (box.upper[1] - box.lower[1]);
    out.push_back(mu);
  }
  return out;
}

void expect_matches_direct(const TruthProblem& p, const Parameter& mu, const oracle::DirectOperators& d) {
  const auto& l = p.lifting;
  const double tol = 1e-12;
  const SparseMatrix stab_full = d.plain + d.supg;
  EXPECT_LT(oracle::relative_difference(system_matrix(p, mu, true), fem::restrict_matrix(stab_full, l)), tol);
  EXPECT_LT(oracle::relative_difference(system_matrix(p, mu, false), fem::restrict_matrix(d.plain, l)), tol);
  EXPECT_LT(oracle::relative_difference(system_rhs(p, mu, true), Vector(-fem::restrict_vector(stab_full * l.lifting, l))),
            tol);
  EXPECT_LT(oracle::relative_difference(system_rhs(p, mu, false), Vector(-fem::restrict_vector(d.plain * l.lifting, l))),
            tol);
  EXPECT_LT(oracle::relative_difference(energy_matrix(p, mu), fem::restrict_matrix(d.diffusion, l)), tol);
  EXPECT_LT(oracle::relative_difference(streamline_matrix(p, mu), d.streamline), tol);
  if (p.is_parabolic()) {
    EXPECT_LT(oracle::relative_difference(mass_matrix(p, mu, false), fem::restrict_matrix(d.mass, l)), tol);
    EXPECT_LT(oracle::relative_difference(mass_matrix(p, mu, true),
                                           fem::restrict_matrix(SparseMatrix(d.mass + d.mass_supg), l)),
              tol);
  }
}

}  // namespace

TEST(Graetz, AffineSumsMatchDirectPhysicalAssembly) {
  GraetzOptions o;
  o.nx = 24;
  o.ny = 12;
  o.transient = true;
  const TruthProblem p = build_graetz(o);
  for (const auto& mu : random_parameters(p.domain, 20, 11, true)) {
    SCOPED_TRACE(to_string(mu));
    expect_matches_direct(p, mu, oracle::direct_graetz(p.mesh, mu));
  }
}

TEST(FrontSquare, AffineSumsMatchDirectAssembly) {
  for (bool by_diameter : {false, true}) {
    FrontSquareOptions o;
    o.nx = o.ny = 16;
    o.delta = 0.7;
    o.scale_by_diameter = by_diameter;
    o.transient = true;
    const TruthProblem p = build_front_square(o);
    for (const auto& mu : random_parameters(p.domain, 20, 12, true)) {
      SCOPED_TRACE(to_string(mu));
      expect_matches_direct(p, mu, oracle::direct_square(p.mesh, mu, o.delta, by_diameter));
    }
  }
}

TEST(Graetz, SizesAndTags) {
  const TruthProblem p = build_graetz();
  EXPECT_EQ(p.mesh.num_nodes(), 93 * 47);
  EXPECT_EQ(p.num_free(), 4140);
  for (int tag = graetz_tags::kInlet; tag <= graetz_tags::kTopLeft; ++tag) EXPECT_TRUE(p.mesh.has_boundary_tag(tag));
  EXPECT_EQ(p.decomposition.a.size() + p.decomposition.s.size() + p.decomposition.f.size() +
                p.decomposition.r.size(),
            5u + 2u + p.decomposition.f.size() + p.decomposition.r.size());
}

TEST(Graetz, LiftingConsistency) {
  GraetzOptions o;
  o.nx = 32;
  o.ny = 16;
  const TruthProblem p = build_graetz(o);
  const Vector u = truth_solve(p, {1e3, 2.0}, true);
  for (int i : p.lifting.dirichlet_dofs) EXPECT_EQ(u[i], p.lifting.lifting[i]);
  // Heated walls carry 1, inlet 0.
  for (int i : p.mesh.boundary_nodes(graetz_tags::kInlet)) EXPECT_EQ(u[i], 0.0);
  for (int i : p.mesh.boundary_nodes(graetz_tags::kTopRight)) {
    if (p.mesh.nodes[i].x > 1.0) EXPECT_EQ(u[i], 1.0);
  }
}

TEST(Graetz, UnstabilizedSolutionOscillatesAtHighPeclet) {
  const TruthProblem p = build_graetz();
  const Vector plain = truth_solve(p, {1e4, 1.0}, false);
  EXPECT_LT(plain.minCoeff(), -0.05);
}

TEST(Graetz, DiffusiveRegimeStaysInDataRange) {
  const TruthProblem p = build_graetz();
  const Vector u = truth_solve(p, {1.0, 1.0}, true);
  EXPECT_GE(u.minCoeff(), -1e-10);
  EXPECT_LE(u.maxCoeff(), 1.0 + 1e-10);
}

TEST(Graetz, StabilizationReducesUndershootAwayFromDataJumps) {
  // The wall data jumps from 0 to 1 at x = 1; P1 interpolation of that jump
  // produces a local undershoot in the two neighbouring cells for either form.
  const TruthProblem p = build_graetz();
  const double hx = 2.0 / 92, hy = 1.0 / 46;
  auto undershoot = [&](const Vector& u) {
    double lo = 0.0;
    for (int i = 0; i < p.mesh.num_nodes(); ++i) {
      const auto& x = p.mesh.nodes[i];
      const bool near_jump =
          std::abs(x.x - 1.0) <= 2.0 * hx + 1e-12 && (x.y <= 2.0 * hy + 1e-12 || x.y >= 1.0 - 2.0 * hy - 1e-12);
      if (!near_jump) lo = std::min(lo, u[i]);
    }
    return -lo;
  };
  for (const Parameter& mu : {Parameter{1e4, 1.0}, Parameter{std::pow(10.0, 4.8), 3.3}, Parameter{1e5, 4.0}}) {
    const double stab = undershoot(truth_solve(p, mu, true));
    const double plain = undershoot(truth_solve(p, mu, false));
    EXPECT_LT(stab, 0.5 * plain) << to_string(mu);
    EXPECT_LE(truth_solve(p, mu, true).maxCoeff(), 1.0 + 1e-10);
  }
  // Moderate Péclet: the stabilized field is monotone up to round-off level
  // while the plain one still oscillates.
  EXPECT_LT(undershoot(truth_solve(p, {1e3, 2.0}, true)), 1e-3);
  EXPECT_GT(undershoot(truth_solve(p, {1e3, 2.0}, false)), 0.02);
}

TEST(Graetz, RejectsParametersOutsideDomain) {
  GraetzOptions o;
  o.nx = 8;
  o.ny = 4;
  const TruthProblem p = build_graetz(o);
  EXPECT_THROW(check_parameter(p, {0.5, 1.0}), InvalidArgument);
  EXPECT_THROW(check_parameter(p, {10.0, 5.0}), InvalidArgument);
  EXPECT_THROW(check_parameter(p, {10.0}), InvalidArgument);
  EXPECT_NO_THROW(check_parameter(p, {10.0, 1.0}));
}

TEST(FrontSquare, SizesAndOptions) {
  const TruthProblem p = build_front_square();
  EXPECT_EQ(p.mesh.num_nodes(), 125 * 125);
  EXPECT_EQ(p.num_free(), 123 * 123);
  FrontSquareOptions bad;
  bad.nx = 10;
  EXPECT_THROW(build_front_square(bad), InvalidArgument);
  bad.nx = 12;
  bad.delta = 0.0;
  EXPECT_THROW(build_front_square(bad), InvalidArgument);
}

TEST(FrontSquare, DataAndPureTransport) {
  FrontSquareOptions o;
  o.nx = o.ny = 32;
  const TruthProblem p = build_front_square(o);
  // Advection along x at moderate Péclet: the value 1 from the left wall is transported.
  const Vector u = truth_solve(p, {1e3, 0.0}, true);
  for (int i : p.mesh.boundary_nodes(square_tags::kLeft)) {
    const auto& x = p.mesh.nodes[i];
    if (x.y > 0.0 && x.y < 1.0) EXPECT_EQ(u[i], 1.0);
  }
  for (int i : p.mesh.boundary_nodes(square_tags::kTop)) EXPECT_EQ(u[i], 0.0);
  EXPECT_GE(u.minCoeff(), -0.05);
  EXPECT_LE(u.maxCoeff(), 1.05);
}

namespace {

// −Δu + u_t = e^{−t}·2π² sin(πx) sin(πy), u = 0 on ∂Ω, u(0) = 0 has the
// exact solution c(t) sin(πx) sin(πy) with c = 2π²/(2π²−1)(e^{−t} − e^{−2π²t}).
TruthProblem manufactured_heat(int n, double final_time, int steps) {
  fem::Mesh mesh = fem::build_structured_mesh({0.0, 1.0, 0.0, 1.0}, n, n);
  std::vector<fem::DirichletCondition> bc;
  for (int tag = 1; tag <= 4; ++tag) bc.push_back({tag, [](const fem::Point&) { return 0.0; }});
  ProblemBuilder b("heat", std::move(mesh), bc, fem::CornerRule::kReject, ParameterBox{{1.0}, {2.0}});
  auto one = [](const Parameter&) { return 1.0; };
  const double pi = std::acos(-1.0);
  b.add_a("diffusion", one, {.kind = fem::TermKind::kDiffusionFull}, true);
  b.add_m("mass", one, {.kind = fem::TermKind::kMass});
  b.add_source("source", one,
               {.kind = fem::TermKind::kRhsSource,
                .source = [pi](const fem::Point& x) { return 2 * pi * pi * std::sin(pi * x.x) * std::sin(pi * x.y); }});
  TransientSetup setup;
  setup.grid = {final_time / steps, steps, [](double t) { return std::exp(-t); }};
  setup.initial = [](const fem::Point&) { return 0.0; };
  b.set_transient(setup);
  return b.build();
}

double manufactured_error(int n, int steps) {
  const double pi = std::acos(-1.0), T = 0.5;
  const TruthProblem p = manufactured_heat(n, T, steps);
  const Trajectory traj = truth_solve_transient(p, {1.0}, false);
  const double k = 2 * pi * pi;
  const double c = k / (k - 1.0) * (std::exp(-T) - std::exp(-k * T));
  double err = 0.0;
  for (int f = 0; f < p.num_free(); ++f) {
    const auto& x = p.mesh.nodes[p.lifting.free_dofs[f]];
    err = std::max(err, std::abs(traj.states.back()[f] - c * std::sin(pi * x.x) * std::sin(pi * x.y)));
  }
  return err / c;
}

}  // namespace

TEST(Transient, BackwardEulerConvergesToManufacturedSolution) {
  // Simultaneous refinement of h and Δt.
  const double e1 = manufactured_error(10, 5);
  const double e2 = manufactured_error(20, 10);
  const double e3 = manufactured_error(40, 20);
  EXPECT_GT(e1 / e2, 1.6);
  EXPECT_GT(e2 / e3, 1.6);
  EXPECT_LT(e3, 0.03);
}

TEST(Transient, TrajectoryLayoutAndValidation) {
  const TruthProblem p = manufactured_heat(8, 1.0, 4);
  const Trajectory t = truth_solve_transient(p, {1.0}, true);
  ASSERT_EQ(t.steps(), 4);
  EXPECT_DOUBLE_EQ(t.times.back(), 1.0);
  EXPECT_DOUBLE_EQ(t.controls[2], std::exp(-0.5));
  EXPECT_EQ(t.states.front().norm(), 0.0);
  TimeGrid bad{0.0, 3, [](double) { return 1.0; }};
  EXPECT_THROW(truth_solve_transient(p, {1.0}, bad, t.states.front(), false), InvalidArgument);
  const TruthProblem steady = build_graetz({.nx = 8, .ny = 4});
  EXPECT_THROW(truth_solve_transient(steady, {10.0, 1.0}, false), InvalidArgument);
}

TEST(Transient, InitialStateIsL2ProjectionOnFreeDofs) {
  GraetzOptions o;
  o.nx = 16;
  o.ny = 8;
  o.transient = true;
  const TruthProblem p = build_graetz(o);
  auto u0 = [](const fem::Point& x) { return 1.0 + x.x * x.y; };
  const Vector projected = project_initial(p, u0, 1.0);
  // Galerkin orthogonality: (ũ0 + l − I u0, φ_i) = 0 for every free φ_i.
  Vector target(p.mesh.num_nodes());
  for (int i = 0; i < p.mesh.num_nodes(); ++i) target[i] = u0(p.mesh.nodes[i]);
  const Vector residual = fem::restrict_vector(p.full_mass * (full_field(p, projected, 1.0) - target), p.lifting);
  EXPECT_LT(residual.norm(), 1e-13);
}
