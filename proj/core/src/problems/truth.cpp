#include "wrb/problems/truth.hpp"

#include <Eigen/SparseCholesky>

#include "wrb/fem/solver.hpp"

namespace wrb::problems {

Vector truth_solve_free(const TruthProblem& problem, const Parameter& mu, bool stabilized) {
  return fem::solve_sparse(system_matrix(problem, mu, stabilized), system_rhs(problem, mu, stabilized));
}

Vector full_field(const TruthProblem& problem, const Vector& free_values, double control) {
  return fem::extend(free_values, problem.lifting) + control * problem.lifting.lifting;
}

Vector truth_solve(const TruthProblem& problem, const Parameter& mu, bool stabilized) {
  return full_field(problem, truth_solve_free(problem, mu, stabilized));
}

Vector project_initial(const TruthProblem& problem, const fem::ScalarField& u0, double control0) {
  const auto& nodes = problem.mesh.nodes;
  Vector interp(static_cast<Eigen::Index>(nodes.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i) interp[static_cast<Eigen::Index>(i)] = u0(nodes[i]);
  const Vector target = interp - control0 * problem.lifting.lifting;
  const Vector rhs = fem::restrict_vector(problem.full_mass * target, problem.lifting);
  Eigen::SimplicialLDLT<SparseMatrix> ldlt(problem.reference_mass);
  if (ldlt.info() != Eigen::Success) throw NumericalFailure(problem.id + ": mass matrix factorization failed");
  return ldlt.solve(rhs);
}

Trajectory truth_solve_transient(const TruthProblem& problem, const Parameter& mu, const TimeGrid& grid,
                                 const Vector& initial_free, bool stabilized) {
  grid.validate();
  if (initial_free.size() != problem.num_free()) throw InvalidArgument("transient solve: initial state has wrong size");
  const SparseMatrix M = mass_matrix(problem, mu, stabilized);
  const SparseMatrix A = system_matrix(problem, mu, stabilized);
  const Vector F = system_rhs(problem, mu, stabilized);
  const SparseMatrix step = M / grid.dt + A;
  const fem::SparseLuSolver solver(step);

  Trajectory traj;
  traj.times.reserve(grid.steps + 1);
  traj.states.reserve(grid.steps + 1);
  traj.times.push_back(0.0);
  traj.controls.push_back(grid.control(0.0));
  traj.states.push_back(initial_free);
  for (int j = 1; j <= grid.steps; ++j) {
    const double t = grid.time(j);
    const double g = grid.control(t);
    const Vector rhs = M * traj.states.back() / grid.dt + g * F;
    traj.states.push_back(solver.solve(rhs));
    traj.times.push_back(t);
    traj.controls.push_back(g);
  }
  return traj;
}

Trajectory truth_solve_transient(const TruthProblem& problem, const Parameter& mu, bool stabilized) {
  if (!problem.transient) throw InvalidArgument(problem.id + ": problem was built without a transient setup");
  const auto& setup = *problem.transient;
  const Vector u0 = project_initial(problem, setup.initial, setup.grid.control(0.0));
  return truth_solve_transient(problem, mu, setup.grid, u0, stabilized);
}

}  // namespace wrb::problems
