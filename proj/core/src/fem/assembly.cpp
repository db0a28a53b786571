#include "wrb/fem/assembly.hpp"

#include <array>
#include <cmath>
#include <string>

namespace wrb::fem {

namespace quadrature {

const std::array<TrianglePoint, 7>& degree5() {
  static const std::array<TrianglePoint, 7> rule = [] {
    const double s = std::sqrt(15.0);
    const double a1 = (6.0 - s) / 21.0, b1 = (9.0 + 2.0 * s) / 21.0, w1 = (155.0 - s) / 1200.0;
    const double a2 = (6.0 + s) / 21.0, b2 = (9.0 - 2.0 * s) / 21.0, w2 = (155.0 + s) / 1200.0;
    return std::array<TrianglePoint, 7>{{
        {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 9.0 / 40.0},
        {a1, a1, b1, w1},
        {a1, b1, a1, w1},
        {b1, a1, a1, w1},
        {a2, a2, b2, w2},
        {a2, b2, a2, w2},
        {b2, a2, a2, w2},
    }};
  }();
  return rule;
}

}  // namespace quadrature

namespace {

struct Element {
  std::array<Point, 3> v;
  std::array<double, 3> gx;
  std::array<double, 3> gy;
  double area;
  double diameter;
};

Element make_element(const Mesh& mesh, int k) {
  const auto& t = mesh.triangles[k];
  Element e;
  for (int a = 0; a < 3; ++a) e.v[a] = mesh.nodes[t[a]];
  const double twice = (e.v[1].x - e.v[0].x) * (e.v[2].y - e.v[0].y) - (e.v[2].x - e.v[0].x) * (e.v[1].y - e.v[0].y);
  e.area = 0.5 * twice;
  e.gx = {(e.v[1].y - e.v[2].y) / twice, (e.v[2].y - e.v[0].y) / twice, (e.v[0].y - e.v[1].y) / twice};
  e.gy = {(e.v[2].x - e.v[1].x) / twice, (e.v[0].x - e.v[2].x) / twice, (e.v[1].x - e.v[0].x) / twice};
  e.diameter = mesh.diameters[k];
  return e;
}

Point at(const Element& e, const quadrature::TrianglePoint& q) {
  return {q.l0 * e.v[0].x + q.l1 * e.v[1].x + q.l2 * e.v[2].x, q.l0 * e.v[0].y + q.l1 * e.v[1].y + q.l2 * e.v[2].y};
}

double streamline_weight(const Element& e, SupgScaling scaling, const Point& beta) {
  switch (scaling) {
    case SupgScaling::kDiameterOverSpeed: {
      const double speed = std::hypot(beta.x, beta.y);
      if (speed == 0.0) {
        throw InvalidArgument("assemble: zero advection field magnitude inside a SUPG term's subdomain");
      }
      return e.diameter / speed;
    }
    case SupgScaling::kDiameter:
      return e.diameter;
    case SupgScaling::kNone:
      return 1.0;
  }
  return 1.0;
}

void validate(const Mesh& mesh, const TermDescriptor& term) {
  if (!mesh.has_subdomain(term.subdomain)) {
    throw InvalidArgument("assemble: subdomain tag " + std::to_string(term.subdomain) + " does not exist in the mesh");
  }
  const bool needs_field = term.kind == TermKind::kAdvection || is_streamline_kind(term.kind);
  if (needs_field && !term.advection) throw InvalidArgument("assemble: advection kind requires an advection field");
  const bool needs_source = term.kind == TermKind::kRhsSource || term.kind == TermKind::kRhsSupg;
  if (needs_source && !term.source) throw InvalidArgument("assemble: right-hand-side kind requires a source field");
}

}  // namespace

bool is_vector_kind(TermKind kind) { return kind == TermKind::kRhsSource || kind == TermKind::kRhsSupg; }

bool is_streamline_kind(TermKind kind) {
  return kind == TermKind::kSupgAdvectionAdvection || kind == TermKind::kSupgMassAdvection ||
         kind == TermKind::kRhsSupg;
}

SparseMatrix assemble_matrix(const Mesh& mesh, const TermDescriptor& term) {
  if (is_vector_kind(term.kind)) throw InvalidArgument("assemble_matrix: term kind produces a vector");
  validate(mesh, term);
  const auto& rule = quadrature::degree5();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(9 * mesh.triangles.size());

  for (int k = 0; k < mesh.num_triangles(); ++k) {
    if (term.subdomain != kAllSubdomains && mesh.subdomain_tags[k] != term.subdomain) continue;
    const Element e = make_element(mesh, k);
    double local[3][3] = {};  // local[i][j] = form(φ_j, φ_i)

    switch (term.kind) {
      case TermKind::kDiffusionXX:
      case TermKind::kDiffusionYY:
      case TermKind::kDiffusionFull: {
        const double cx = term.kind == TermKind::kDiffusionYY ? 0.0 : 1.0;
        const double cy = term.kind == TermKind::kDiffusionXX ? 0.0 : 1.0;
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) local[i][j] = e.area * (cx * e.gx[i] * e.gx[j] + cy * e.gy[i] * e.gy[j]);
        break;
      }
      default: {
        for (const auto& q : rule) {
          const double lam[3] = {q.l0, q.l1, q.l2};
          const double wq = q.weight * e.area;
          const Point x = at(e, q);
          if (term.kind == TermKind::kMass) {
            for (int i = 0; i < 3; ++i)
              for (int j = 0; j < 3; ++j) local[i][j] += wq * lam[i] * lam[j];
            continue;
          }
          const Point beta = term.advection(x);
          if (term.kind == TermKind::kAdvection) {
            for (int i = 0; i < 3; ++i)
              for (int j = 0; j < 3; ++j) local[i][j] += wq * (beta.x * e.gx[j] + beta.y * e.gy[j]) * lam[i];
          } else if (term.kind == TermKind::kSupgAdvectionAdvection) {
            const Point b = term.test_direction ? term.test_direction(x) : beta;
            const double w = wq * streamline_weight(e, term.scaling, beta);
            for (int i = 0; i < 3; ++i)
              for (int j = 0; j < 3; ++j)
                local[i][j] += w * (beta.x * e.gx[j] + beta.y * e.gy[j]) * (b.x * e.gx[i] + b.y * e.gy[i]);
          } else if (term.kind == TermKind::kSupgMassAdvection) {
            const double w = wq * streamline_weight(e, term.scaling, beta);
            for (int i = 0; i < 3; ++i)
              for (int j = 0; j < 3; ++j) local[i][j] += w * lam[j] * (beta.x * e.gx[i] + beta.y * e.gy[i]);
          }
        }
      }
    }
    const auto& t = mesh.triangles[k];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) triplets.emplace_back(t[i], t[j], local[i][j]);
  }
  SparseMatrix A(mesh.num_nodes(), mesh.num_nodes());
  A.setFromTriplets(triplets.begin(), triplets.end());
  A.makeCompressed();
  return A;
}

Vector assemble_vector(const Mesh& mesh, const TermDescriptor& term) {
  if (!is_vector_kind(term.kind)) throw InvalidArgument("assemble_vector: term kind produces a matrix");
  validate(mesh, term);
  Vector b = Vector::Zero(mesh.num_nodes());
  for (int k = 0; k < mesh.num_triangles(); ++k) {
    if (term.subdomain != kAllSubdomains && mesh.subdomain_tags[k] != term.subdomain) continue;
    const Element e = make_element(mesh, k);
    const auto& t = mesh.triangles[k];
    for (const auto& q : quadrature::degree5()) {
      const double lam[3] = {q.l0, q.l1, q.l2};
      const Point x = at(e, q);
      const double fw = q.weight * e.area * term.source(x);
      if (term.kind == TermKind::kRhsSource) {
        for (int i = 0; i < 3; ++i) b[t[i]] += fw * lam[i];
      } else {
        const Point beta = term.advection(x);
        const double w = fw * streamline_weight(e, term.scaling, beta);
        for (int i = 0; i < 3; ++i) b[t[i]] += w * (beta.x * e.gx[i] + beta.y * e.gy[i]);
      }
    }
  }
  return b;
}

AssembledTerm assemble_term(const Mesh& mesh, const TermDescriptor& term) {
  if (is_vector_kind(term.kind)) return assemble_vector(mesh, term);
  return assemble_matrix(mesh, term);
}

std::vector<double> element_peclet(const Mesh& mesh, const VectorField& beta, double diffusivity) {
  if (!(diffusivity > 0.0)) throw InvalidArgument("element_peclet: diffusivity must be positive");
  std::vector<double> pe(mesh.triangles.size());
  for (int k = 0; k < mesh.num_triangles(); ++k) {
    const Point b = beta(mesh.centroid(k));
    pe[k] = std::hypot(b.x, b.y) * mesh.diameters[k] / (2.0 * diffusivity);
  }
  return pe;
}

}  // namespace wrb::fem
