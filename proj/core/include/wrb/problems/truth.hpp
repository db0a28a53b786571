#pragma once

#include <vector>

#include "wrb/problems/problem.hpp"

namespace wrb::problems {

/// Homogenized solution on free dofs (the lifting is not included).
Vector truth_solve_free(const TruthProblem& problem, const Parameter& mu, bool stabilized);
/// Full nodal field: free part padded with zeros plus the lifting.
Vector truth_solve(const TruthProblem& problem, const Parameter& mu, bool stabilized);
/// extend(free) + control · lifting.
Vector full_field(const TruthProblem& problem, const Vector& free_values, double control = 1.0);

/// States hold the homogenized free-dof part ũ_j; the full field at t_j is
/// ũ_j + g(t_j)·l.
struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
  std::vector<double> controls;

  [[nodiscard]] int steps() const { return static_cast<int>(states.size()) - 1; }
};

/// Reference-L² projection of u0 − g(0)·l onto the free-dof space.
Vector project_initial(const TruthProblem& problem, const fem::ScalarField& u0, double control0);

/// Backward Euler: (1/Δt) m(ũ_j − ũ_{j−1}, v) + a(ũ_j, v) = g(t_j) F(v).
Trajectory truth_solve_transient(const TruthProblem& problem, const Parameter& mu, const TimeGrid& grid,
                                 const Vector& initial_free, bool stabilized);
/// Uses the problem's default grid and initial field.
Trajectory truth_solve_transient(const TruthProblem& problem, const Parameter& mu, bool stabilized);

}  // namespace wrb::problems
