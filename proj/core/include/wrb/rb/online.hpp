#pragma once

#include "wrb/problems/problem.hpp"
#include "wrb/rb/reduced_space.hpp"

namespace wrb::rb {

/// Σ θ_q(μ) B_q over the reduced blocks, with the SUPG blocks when stabilized.
Matrix reduced_matrix(const ReducedSpace& space, const problems::Thetas& th, bool stabilized);
Vector reduced_rhs(const ReducedSpace& space, const problems::Thetas& th, bool stabilized);
Matrix reduced_mass(const ReducedSpace& space, const problems::Thetas& th, bool stabilized);

/// Reduced coefficients of the Galerkin projection at μ.
Vector rb_solve(const problems::TruthProblem& problem, const ReducedSpace& space, const Parameter& mu,
                bool stabilized);
Vector rb_solve(const ReducedSpace& space, const problems::Thetas& th, bool stabilized);

/// ‖r̂(μ)‖_X for the steady residual F − a(u_N, ·) of the chosen variant.
double residual_norm(const ReducedSpace& space, const problems::Thetas& th, const Vector& coeffs, bool stabilized);

/// Δ_N(μ) = ‖r̂‖_X / √α_LB(μ).
double error_estimator(const problems::TruthProblem& problem, const ReducedSpace& space, const Parameter& mu,
                       const Vector& coeffs, bool stabilized);

/// Free-dof field V·c.
Vector reconstruct(const ReducedSpace& space, const Vector& coeffs);

/// |||e|||_μ = √(eᵀ D(μ) e).
double energy_norm(const problems::TruthProblem& problem, const Parameter& mu, const Vector& free_values);

}  // namespace wrb::rb
