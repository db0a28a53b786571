#pragma once

#include <functional>
#include <variant>

#include "wrb/common.hpp"
#include "wrb/fem/mesh.hpp"

namespace wrb::fem {

using ScalarField = std::function<double(const Point&)>;
using VectorField = std::function<Point(const Point&)>;

enum class TermKind {
  kDiffusionXX,             // ∫ ∂x u ∂x v
  kDiffusionYY,             // ∫ ∂y u ∂y v
  kDiffusionFull,           // ∫ ∇u·∇v
  kAdvection,               // ∫ (β·∇u) v
  kMass,                    // ∫ u v
  kSupgAdvectionAdvection,  // Σ_K w_K ∫_K (β·∇u)(b·∇v)
  kSupgMassAdvection,       // Σ_K w_K ∫_K u (β·∇v)
  kRhsSource,               // ∫ f v
  kRhsSupg,                 // Σ_K w_K ∫_K f (β·∇v)
};

/// Elementwise weight w_K of the streamline kinds.
enum class SupgScaling {
  kDiameterOverSpeed,  // h_K / |β(x)|
  kDiameter,           // h_K (field already normalized)
  kNone,               // 1
};

struct TermDescriptor {
  TermKind kind = TermKind::kMass;
  /// β: trial-side field for advection kinds, test-side field for
  /// kSupgMassAdvection / kRhsSupg.
  VectorField advection{};
  /// b: test-side direction for kSupgAdvectionAdvection; defaults to β.
  VectorField test_direction{};
  ScalarField source{};
  int subdomain = kAllSubdomains;
  SupgScaling scaling = SupgScaling::kDiameterOverSpeed;
};

[[nodiscard]] bool is_vector_kind(TermKind kind);
[[nodiscard]] bool is_streamline_kind(TermKind kind);

/// Global matrix with A(i, j) = form(φ_j, φ_i), i.e. rows are test functions.
SparseMatrix assemble_matrix(const Mesh& mesh, const TermDescriptor& term);
Vector assemble_vector(const Mesh& mesh, const TermDescriptor& term);

using AssembledTerm = std::variant<SparseMatrix, Vector>;
AssembledTerm assemble_term(const Mesh& mesh, const TermDescriptor& term);

/// ℙe_K = |β(x_c)| h_K / (2ε) at each element centroid.
std::vector<double> element_peclet(const Mesh& mesh, const VectorField& beta, double diffusivity);

namespace quadrature {

/// 7-point rule on triangles, exact for polynomials of total degree 5.
struct TrianglePoint {
  double l0, l1, l2;  // barycentric coordinates
  double weight;      // fraction of the element area; weights sum to 1
};
const std::array<TrianglePoint, 7>& degree5();

}  // namespace quadrature

}  // namespace wrb::fem
