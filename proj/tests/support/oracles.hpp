#pragma once

#include <functional>
#include <vector>

#include "wrb/common.hpp"
#include "wrb/fem/mesh.hpp"

namespace wrb::oracle {

/// Full-node operators assembled directly on the physical domain, rows = test
/// functions.
struct DirectOperators {
  SparseMatrix plain;      // diffusion + advection
  SparseMatrix supg;       // Σ τ_K ∫ (β·∇u)(β·∇v)
  SparseMatrix diffusion;  // energy Gram
  SparseMatrix mass;
  SparseMatrix mass_supg;  // Σ τ_K ∫ u (β·∇v)
  SparseMatrix streamline; // ∫ (β·∇u)(β·∇v), no τ
};

/// Collapsed (Duffy) Gauss rule on the unit right triangle, n×n points.
struct RulePoint {
  double xi, eta, weight;  // weights sum to 1/2
};
std::vector<RulePoint> collapsed_gauss_rule();

/// Generic physical-domain assembly: `physical` maps reference nodes, `beta`
/// the physical velocity, `tau` the per-element streamline weight as a
/// function of (element index, physical point, |β|).
DirectOperators assemble_direct(const fem::Mesh& reference, const std::function<fem::Point(const fem::Point&)>& physical,
                                double diffusivity, const std::function<fem::Point(const fem::Point&)>& beta,
                                const std::function<double(int, const fem::Point&, double)>& tau);

/// Channel problem at μ with the heated section stretched to length μ2 and
/// τ_K = h_ref,K/|β| on Ω¹, √μ2·h_ref,K/|β| on Ω².
DirectOperators direct_graetz(const fem::Mesh& reference, const Parameter& mu);

/// Front problem at μ with τ_K = δ (times h_K when `by_diameter`).
DirectOperators direct_square(const fem::Mesh& mesh, const Parameter& mu, double delta, bool by_diameter);

/// ‖A − B‖_F / ‖B‖_F.
double relative_difference(const SparseMatrix& a, const SparseMatrix& b);
double relative_difference(const Vector& a, const Vector& b);

/// Dense reference for the smallest λ of A v = λ B v.
double dense_smallest_eigenvalue(const SparseMatrix& a, const SparseMatrix& b);

/// Regularized incomplete beta I_x(α, β) by composite Simpson on the density.
double beta_cdf_by_quadrature(double x, double alpha, double beta, int intervals = 20000);

}  // namespace wrb::oracle
