#include "wrb/problems/benchmarks.hpp"

#include <algorithm>
#include <cmath>

namespace wrb::problems {

using fem::Point;
using fem::SupgScaling;
using fem::TermDescriptor;
using fem::TermKind;

fem::Point graetz_velocity(const Point& x) { return {4.0 * x.y * (1.0 - x.y), 0.0}; }

namespace {

ThetaFn constant(double c) {
  return [c](const Parameter&) { return c; };
}

}  // namespace

TruthProblem build_graetz(const GraetzOptions& o) {
  if (o.nx % 2 != 0) throw InvalidArgument("graetz: nx must be even so that x = 1 is a grid line");
  if (o.domain.dimension() != 2) throw InvalidArgument("graetz: parameter domain must be two-dimensional");
  if (!(o.domain.lower[0] > 0.0) || !(o.domain.lower[1] > 0.0)) {
    throw InvalidArgument("graetz: parameters must be positive");
  }
  using namespace graetz_tags;
  const fem::Rectangle rect{0.0, 2.0, 0.0, 1.0};
  auto tagger = [](const Point& m) {
    constexpr double tol = 1e-12;
    if (std::abs(m.x) <= tol) return kInlet;
    if (std::abs(m.x - 2.0) <= tol) return kOutlet;
    if (std::abs(m.y) <= tol) return m.x < 1.0 ? kBottomLeft : kBottomRight;
    return m.x < 1.0 ? kTopLeft : kTopRight;
  };
  fem::Mesh mesh = fem::build_structured_mesh(rect, o.nx, o.ny, 1.0, tagger);

  auto zero = [](const Point&) { return 0.0; };
  auto one = [](const Point&) { return 1.0; };
  std::vector<fem::DirichletCondition> bc{
      {kInlet, zero}, {kBottomLeft, zero}, {kTopLeft, zero}, {kBottomRight, one}, {kTopRight, one}};

  const double hx = 2.0 / o.nx;
  const double hy = 1.0 / o.ny;
  ProblemBuilder b("graetz", std::move(mesh), bc, fem::CornerRule::kPreferHomogeneous, o.domain);
  const fem::VectorField beta = graetz_velocity;

  b.add_a("diffusion[1]", [](const Parameter& mu) { return 1.0 / mu[0]; },
          {.kind = TermKind::kDiffusionFull, .subdomain = 1}, true);
  b.add_a("advection[1]", constant(1.0), {.kind = TermKind::kAdvection, .advection = beta, .subdomain = 1});
  b.add_a("diffusion_xx[2]", [](const Parameter& mu) { return 1.0 / (mu[0] * mu[1]); },
          {.kind = TermKind::kDiffusionXX, .subdomain = 2}, true);
  b.add_a("diffusion_yy[2]", [](const Parameter& mu) { return mu[1] / mu[0]; },
          {.kind = TermKind::kDiffusionYY, .subdomain = 2}, true);
  b.add_a("advection[2]", constant(1.0), {.kind = TermKind::kAdvection, .advection = beta, .subdomain = 2});

  const TermDescriptor supg1{.kind = TermKind::kSupgAdvectionAdvection, .advection = beta, .subdomain = 1,
                             .scaling = SupgScaling::kDiameterOverSpeed};
  TermDescriptor supg2 = supg1;
  supg2.subdomain = 2;
  b.add_s("supg[1]", constant(1.0), supg1);
  b.add_s("supg[2]", [](const Parameter& mu) { return 1.0 / std::sqrt(mu[1]); }, supg2);

  // ‖β·∇u‖² on the physical domain: ∂x scales by 1/μ2, the area by μ2.
  const TermDescriptor stream1{.kind = TermKind::kSupgAdvectionAdvection, .advection = beta, .subdomain = 1,
                               .scaling = SupgScaling::kNone};
  TermDescriptor stream2 = stream1;
  stream2.subdomain = 2;
  b.add_streamline("streamline[1]", constant(1.0), stream1);
  b.add_streamline("streamline[2]", [](const Parameter& mu) { return 1.0 / mu[1]; }, stream2);
  b.set_beta_sup(1.0);
  b.set_hmax([hx, hy](const Parameter& mu) { return std::hypot(std::max(1.0, mu[1]) * hx, hy); });

  if (o.transient) {
    b.add_m("mass[1]", constant(1.0), {.kind = TermKind::kMass, .subdomain = 1});
    b.add_m("mass[2]", [](const Parameter& mu) { return mu[1]; }, {.kind = TermKind::kMass, .subdomain = 2});
    const TermDescriptor sm1{.kind = TermKind::kSupgMassAdvection, .advection = beta, .subdomain = 1,
                             .scaling = SupgScaling::kDiameterOverSpeed};
    TermDescriptor sm2 = sm1;
    sm2.subdomain = 2;
    b.add_m_stab("supg_mass[1]", constant(1.0), sm1);
    b.add_m_stab("supg_mass[2]", [](const Parameter& mu) { return std::sqrt(mu[1]); }, sm2);
    TransientSetup setup;
    setup.grid = {o.final_time / o.steps, o.steps, [](double) { return 1.0; }};
    setup.initial = [](const Point&) { return 1.0; };
    if (o.control) setup.grid.control = o.control;
    if (o.initial) setup.initial = o.initial;
    b.set_transient(std::move(setup));
  }
  return b.build();
}

TruthProblem build_front_square(const FrontSquareOptions& o) {
  if (!(o.delta > 0.0)) throw InvalidArgument("front square: stabilization coefficient must be positive");
  if (o.nx % 4 != 0) throw InvalidArgument("front square: nx must be divisible by 4 so that x = 1/4 is a grid line");
  if (o.domain.dimension() != 2) throw InvalidArgument("front square: parameter domain must be two-dimensional");
  if (!(o.domain.lower[0] > 0.0)) throw InvalidArgument("front square: Péclet parameter must be positive");
  using namespace square_tags;
  const fem::Rectangle rect{0.0, 1.0, 0.0, 1.0};
  auto tagger = [](const Point& m) {
    constexpr double tol = 1e-12;
    if (std::abs(m.x) <= tol) return kLeft;
    if (std::abs(m.x - 1.0) <= tol) return kRight;
    if (std::abs(m.y - 1.0) <= tol) return kTop;
    return m.x < 0.25 ? kBottomLeft : kBottomRight;
  };
  fem::Mesh mesh = fem::build_structured_mesh(rect, o.nx, o.ny, std::nullopt, tagger);
  auto zero = [](const Point&) { return 0.0; };
  auto one = [](const Point&) { return 1.0; };
  std::vector<fem::DirichletCondition> bc{
      {kLeft, one}, {kBottomLeft, one}, {kBottomRight, zero}, {kRight, zero}, {kTop, zero}};

  const double delta = o.delta;
  const SupgScaling supg_scaling = o.scale_by_diameter ? SupgScaling::kDiameter : SupgScaling::kNone;
  const double h = std::hypot(1.0 / o.nx, 1.0 / o.ny);
  ProblemBuilder b("front_square", std::move(mesh), bc, fem::CornerRule::kPreferHomogeneous, o.domain);
  const fem::VectorField ex = [](const Point&) { return Point{1.0, 0.0}; };
  const fem::VectorField ey = [](const Point&) { return Point{0.0, 1.0}; };

  b.add_a("diffusion", [](const Parameter& mu) { return 1.0 / mu[0]; }, {.kind = TermKind::kDiffusionFull}, true);
  b.add_a("advection_x", [](const Parameter& mu) { return std::cos(mu[1]); },
          {.kind = TermKind::kAdvection, .advection = ex});
  b.add_a("advection_y", [](const Parameter& mu) { return std::sin(mu[1]); },
          {.kind = TermKind::kAdvection, .advection = ey});

  auto stream = [](const fem::VectorField& trial, const fem::VectorField& test, SupgScaling scaling) {
    return TermDescriptor{.kind = TermKind::kSupgAdvectionAdvection, .advection = trial, .test_direction = test,
                          .scaling = scaling};
  };
  b.add_s("supg_xx", [delta](const Parameter& mu) { return delta * std::cos(mu[1]) * std::cos(mu[1]); },
          stream(ex, ex, supg_scaling));
  b.add_s("supg_xy", [delta](const Parameter& mu) { return delta * std::cos(mu[1]) * std::sin(mu[1]); },
          stream(ex, ey, supg_scaling));
  b.add_s("supg_yx", [delta](const Parameter& mu) { return delta * std::cos(mu[1]) * std::sin(mu[1]); },
          stream(ey, ex, supg_scaling));
  b.add_s("supg_yy", [delta](const Parameter& mu) { return delta * std::sin(mu[1]) * std::sin(mu[1]); },
          stream(ey, ey, supg_scaling));

  b.add_streamline("streamline_xx", [](const Parameter& mu) { return std::cos(mu[1]) * std::cos(mu[1]); },
                   stream(ex, ex, SupgScaling::kNone));
  b.add_streamline("streamline_xy", [](const Parameter& mu) { return std::cos(mu[1]) * std::sin(mu[1]); },
                   stream(ex, ey, SupgScaling::kNone));
  b.add_streamline("streamline_yx", [](const Parameter& mu) { return std::cos(mu[1]) * std::sin(mu[1]); },
                   stream(ey, ex, SupgScaling::kNone));
  b.add_streamline("streamline_yy", [](const Parameter& mu) { return std::sin(mu[1]) * std::sin(mu[1]); },
                   stream(ey, ey, SupgScaling::kNone));
  b.set_beta_sup(1.0);
  b.set_hmax([h](const Parameter&) { return h; });

  if (o.transient) {
    b.add_m("mass", constant(1.0), {.kind = TermKind::kMass});
    b.add_m_stab("supg_mass_x", [delta](const Parameter& mu) { return delta * std::cos(mu[1]); },
                 {.kind = TermKind::kSupgMassAdvection, .advection = ex, .scaling = supg_scaling});
    b.add_m_stab("supg_mass_y", [delta](const Parameter& mu) { return delta * std::sin(mu[1]); },
                 {.kind = TermKind::kSupgMassAdvection, .advection = ey, .scaling = supg_scaling});
    TransientSetup setup;
    setup.grid = {o.final_time / o.steps, o.steps, [](double t) { return std::cos(t); }};
    setup.initial = [](const Point&) { return 0.0; };
    if (o.control) setup.grid.control = o.control;
    if (o.initial) setup.initial = o.initial;
    b.set_transient(std::move(setup));
  }
  return b.build();
}

}  // namespace wrb::problems
