#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "wrb/fem/assembly.hpp"
#include "wrb/fem/lifting.hpp"
#include "wrb/fem/mesh.hpp"
#include "wrb/fem/solver.hpp"

using namespace wrb;
using namespace wrb::fem;

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

Vector nodal(const Mesh& mesh, const std::function<double(const Point&)>& f) {
  Vector v(mesh.num_nodes());
  for (int i = 0; i < mesh.num_nodes(); ++i) v[i] = f(mesh.nodes[i]);
  return v;
}

}  // namespace

TEST(Mesh, CountsAndAreas) {
  const Mesh m = build_structured_mesh({0.0, 2.0, 0.0, 1.0}, 8, 4);
  EXPECT_EQ(m.num_nodes(), 9 * 5);
  EXPECT_EQ(m.num_triangles(), 2 * 8 * 4);
  double total = 0.0;
  for (int k = 0; k < m.num_triangles(); ++k) {
    EXPECT_GT(m.signed_area(k), 0.0);
    total += m.signed_area(k);
  }
  EXPECT_NEAR(total, 2.0, 1e-14);
  for (double d : m.diameters) EXPECT_NEAR(d, std::hypot(0.25, 0.25), 1e-14);
}

TEST(Mesh, SubdomainSplitAndSideTags) {
  const Mesh m = build_structured_mesh({0.0, 2.0, 0.0, 1.0}, 8, 4, 1.0);
  for (int k = 0; k < m.num_triangles(); ++k) {
    EXPECT_EQ(m.subdomain_tags[k], m.centroid(k).x < 1.0 ? 1 : 2);
  }
  // bottom 1, right 2, top 3, left 4
  for (int tag = 1; tag <= 4; ++tag) EXPECT_TRUE(m.has_boundary_tag(tag));
  EXPECT_EQ(m.boundary_nodes(4).size(), 5u);
  EXPECT_EQ(m.boundary_nodes(1).size(), 9u);
  EXPECT_EQ(m.boundary_edges.size(), 2u * (8 + 4));
}

TEST(Mesh, RejectsDegenerateInput) {
  EXPECT_THROW(build_structured_mesh({0.0, 1.0, 0.0, 1.0}, 0, 3), InvalidArgument);
  EXPECT_THROW(build_structured_mesh({1.0, 1.0, 0.0, 1.0}, 2, 2), InvalidArgument);
}

TEST(Quadrature, Degree5ExactOnMonomials) {
  // ∫_T̂ x^a y^b = a! b! / (a+b+2)! on the unit right triangle (area 1/2).
  const auto& rule = quadrature::degree5();
  for (int a = 0; a <= 5; ++a) {
    for (int b = 0; a + b <= 5; ++b) {
      double q = 0.0;
      for (const auto& p : rule) q += 0.5 * p.weight * std::pow(p.l1, a) * std::pow(p.l2, b);
      EXPECT_NEAR(q, factorial(a) * factorial(b) / factorial(a + b + 2), 1e-15) << a << "," << b;
    }
  }
}

TEST(Assembly, StiffnessAndMassMatchElementFormulas) {
  // Single square split in two: element stiffness from the P1 gradient formula,
  // mass from |K|/12 (1 + δ_ij).
  const Mesh m = build_structured_mesh({0.0, 1.0, 0.0, 1.0}, 1, 1);
  const Matrix K(assemble_matrix(m, {.kind = TermKind::kDiffusionFull}));
  const Matrix M(assemble_matrix(m, {.kind = TermKind::kMass}));
  Matrix Kref = Matrix::Zero(4, 4), Mref = Matrix::Zero(4, 4);
  for (int k = 0; k < m.num_triangles(); ++k) {
    const auto& t = m.triangles[k];
    const Point p[3] = {m.nodes[t[0]], m.nodes[t[1]], m.nodes[t[2]]};
    const double det = (p[1].x - p[0].x) * (p[2].y - p[0].y) - (p[2].x - p[0].x) * (p[1].y - p[0].y);
    const double gx[3] = {(p[1].y - p[2].y) / det, (p[2].y - p[0].y) / det, (p[0].y - p[1].y) / det};
    const double gy[3] = {(p[2].x - p[1].x) / det, (p[0].x - p[2].x) / det, (p[1].x - p[0].x) / det};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        Kref(t[i], t[j]) += 0.5 * det * (gx[i] * gx[j] + gy[i] * gy[j]);
        Mref(t[i], t[j]) += 0.5 * det / 12.0 * (i == j ? 2.0 : 1.0);
      }
    }
  }
  EXPECT_LT((K - Kref).norm(), 1e-14);
  EXPECT_LT((M - Mref).norm(), 1e-14);
}

TEST(Assembly, AdvectionOfLinearFieldMatchesCalculus) {
  // u = x, v = 1, β = (4y(1−y), 0): ∫ β·∇u v = ∫₀¹ 4y(1−y) dy = 2/3 on the unit square.
  const Mesh m = build_structured_mesh({0.0, 1.0, 0.0, 1.0}, 5, 7);
  const SparseMatrix A = assemble_matrix(
      m, {.kind = TermKind::kAdvection, .advection = [](const Point& x) { return Point{4 * x.y * (1 - x.y), 0.0}; }});
  const Vector u = nodal(m, [](const Point& x) { return x.x; });
  const Vector one = Vector::Ones(m.num_nodes());
  EXPECT_NEAR(one.dot(A * u), 2.0 / 3.0, 1e-14);
}

TEST(Assembly, AdvectionSymmetricPartIsBoundaryFlux) {
  // A + Aᵀ equals ∮ (β·n) u v for divergence-free β. With u = x, v = y and
  // β = (1, 2): ∮ (β·n) x y = ∫_{x=1} y dy + 2 ∫_{y=1} x dx = 1/2 + 1.
  const Mesh m = build_structured_mesh({0.0, 1.0, 0.0, 1.0}, 6, 6);
  const SparseMatrix A =
      assemble_matrix(m, {.kind = TermKind::kAdvection, .advection = [](const Point&) { return Point{1.0, 2.0}; }});
  const Vector u = nodal(m, [](const Point& x) { return x.x; });
  const Vector v = nodal(m, [](const Point& x) { return x.y; });
  EXPECT_NEAR(v.dot(A * u) + u.dot(A * v), 1.5, 1e-13);
}

TEST(Assembly, StreamlineScalings) {
  const Mesh m = build_structured_mesh({0.0, 1.0, 0.0, 1.0}, 4, 4);
  const Vector u = nodal(m, [](const Point& x) { return x.x; });
  auto ex = [](const Point&) { return Point{1.0, 0.0}; };
  auto value = [&](SupgScaling s) {
    const SparseMatrix S =
        assemble_matrix(m, {.kind = TermKind::kSupgAdvectionAdvection, .advection = ex, .scaling = s});
    return u.dot(S * u);
  };
  EXPECT_NEAR(value(SupgScaling::kNone), 1.0, 1e-14);
  EXPECT_NEAR(value(SupgScaling::kDiameter), std::hypot(0.25, 0.25), 1e-14);
  EXPECT_NEAR(value(SupgScaling::kDiameterOverSpeed), std::hypot(0.25, 0.25), 1e-14);
}

TEST(Assembly, ZeroSpeedWithSpeedScalingIsRejected) {
  const Mesh m = build_structured_mesh({0.0, 1.0, 0.0, 1.0}, 2, 2);
  auto zero = [](const Point&) { return Point{0.0, 0.0}; };
  EXPECT_THROW(assemble_matrix(m, {.kind = TermKind::kSupgAdvectionAdvection, .advection = zero}), InvalidArgument);
}

TEST(Assembly, SourceVectorIntegratesField) {
  const Mesh m = build_structured_mesh({0.0, 2.0, 0.0, 1.0}, 3, 5);
  const Vector f = assemble_vector(m, {.kind = TermKind::kRhsSource, .source = [](const Point& x) { return x.x * x.y; }});
  // Σ_i ∫ f φ_i = ∫ f = ∫₀² x dx ∫₀¹ y dy = 1.
  EXPECT_NEAR(f.sum(), 1.0, 1e-14);
}

TEST(Assembly, SubdomainRestriction) {
  const Mesh m = build_structured_mesh({0.0, 2.0, 0.0, 1.0}, 4, 2, 1.0);
  const Vector one = Vector::Ones(m.num_nodes());
  for (int sd : {1, 2}) {
    const SparseMatrix M = assemble_matrix(m, {.kind = TermKind::kMass, .subdomain = sd});
    EXPECT_NEAR(one.dot(M * one), 1.0, 1e-14);
  }
  EXPECT_THROW(assemble_matrix(m, {.kind = TermKind::kMass, .subdomain = 3}), InvalidArgument);
}

TEST(Assembly, ElementPeclet) {
  const Mesh m = build_structured_mesh({0.0, 1.0, 0.0, 1.0}, 2, 2);
  const auto pe = element_peclet(m, [](const Point&) { return Point{3.0, 4.0}; }, 0.1);
  for (double p : pe) EXPECT_NEAR(p, 5.0 * std::hypot(0.5, 0.5) / 0.2, 1e-12);
}

TEST(Lifting, InterpolatesDataAndVanishesOnFreeDofs) {
  const Mesh m = build_structured_mesh({0.0, 1.0, 0.0, 1.0}, 4, 4);
  std::vector<DirichletCondition> all;
  for (int tag = 1; tag <= 4; ++tag) all.push_back({tag, [](const Point&) { return 1.0; }});
  const LiftingData l = build_lifting(m, all);
  EXPECT_EQ(l.num_free(), 9);
  for (int i : l.dirichlet_dofs) EXPECT_EQ(l.lifting[i], 1.0);
  for (int i : l.free_dofs) EXPECT_EQ(l.lifting[i], 0.0);

  const LiftingData zero = build_lifting(m, {{1, [](const Point&) { return 0.0; }}});
  EXPECT_EQ(zero.lifting.norm(), 0.0);
}

TEST(Lifting, CornerConflicts) {
  const Mesh m = build_structured_mesh({0.0, 1.0, 0.0, 1.0}, 2, 2);
  const std::vector<DirichletCondition> conflict{{1, [](const Point&) { return 1.0; }},
                                                 {2, [](const Point&) { return 0.0; }}};
  EXPECT_THROW(build_lifting(m, conflict, CornerRule::kReject), InvalidArgument);
  const LiftingData l = build_lifting(m, conflict, CornerRule::kPreferHomogeneous);
  // The bottom-right corner (node 2) is shared.
  EXPECT_EQ(l.lifting[2], 0.0);
  EXPECT_EQ(l.lifting[1], 1.0);
}

TEST(Lifting, RestrictExtendRoundTrip) {
  const Mesh m = build_structured_mesh({0.0, 1.0, 0.0, 1.0}, 3, 3);
  const LiftingData l = build_lifting(m, {{1, [](const Point&) { return 2.0; }}});
  Vector free = Vector::LinSpaced(l.num_free(), 1.0, 2.0);
  EXPECT_EQ((restrict_vector(extend(free, l), l) - free).norm(), 0.0);
}

TEST(Solver, ReproducesHarmonicLinearField) {
  // −Δu = 0 with u = x + 2y on the boundary: P1 reproduces u exactly.
  const Mesh m = build_structured_mesh({0.0, 1.0, 0.0, 1.0}, 7, 5);
  auto exact = [](const Point& x) { return x.x + 2.0 * x.y; };
  std::vector<DirichletCondition> bc;
  for (int tag = 1; tag <= 4; ++tag) bc.push_back({tag, exact});
  const LiftingData l = build_lifting(m, bc);
  const SparseMatrix K = assemble_matrix(m, {.kind = TermKind::kDiffusionFull});
  const Vector rhs = -restrict_vector(K * l.lifting, l);
  const Vector u = extend(solve_sparse(restrict_matrix(K, l), rhs), l) + l.lifting;
  EXPECT_LT((u - nodal(m, exact)).lpNorm<Eigen::Infinity>(), 1e-12);
}

TEST(Solver, SingularMatrixIsReported) {
  SparseMatrix z(3, 3);
  z.insert(0, 0) = 1.0;
  z.makeCompressed();
  EXPECT_THROW(solve_sparse(z, Vector::Ones(3)), NumericalFailure);
}
