#include "wrb/problems/problem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wrb::problems {

void TimeGrid::validate() const {
  if (!(dt > 0.0)) throw InvalidArgument("time grid: dt must be positive");
  if (steps < 1) throw InvalidArgument("time grid: at least one step required");
  if (!control) throw InvalidArgument("time grid: control function missing");
}

void check_parameter(const TruthProblem& problem, const Parameter& mu) {
  if (mu.size() != problem.domain.dimension()) {
    throw InvalidArgument(problem.id + ": parameter has " + std::to_string(mu.size()) + " components, expected " +
                          std::to_string(problem.domain.dimension()));
  }
  if (!problem.domain.contains(mu)) {
    throw InvalidArgument(problem.id + ": parameter " + to_string(mu) + " lies outside the parameter domain");
  }
}

namespace {

template <class Op>
std::vector<double> eval(const std::vector<AffineTerm<Op>>& terms, const Parameter& mu) {
  std::vector<double> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    const double v = t.theta(mu);
    if (!std::isfinite(v)) throw NumericalFailure("theta '" + t.name + "' is not finite at " + to_string(mu));
    out.push_back(v);
  }
  return out;
}

}  // namespace

Thetas evaluate_thetas(const TruthProblem& problem, const Parameter& mu) {
  check_parameter(problem, mu);
  const auto& d = problem.decomposition;
  return {eval(d.a, mu), eval(d.s, mu), eval(d.f, mu), eval(d.r, mu), eval(d.m, mu), eval(d.m_stab, mu)};
}

SparseMatrix combine(const std::vector<MatrixTerm>& terms, const std::vector<double>& theta) {
  if (terms.empty()) return {};
  SparseMatrix out(terms.front().op.rows(), terms.front().op.cols());
  for (std::size_t q = 0; q < terms.size(); ++q) out += theta[q] * terms[q].op;
  return out;
}

Vector combine(const std::vector<VectorTerm>& terms, const std::vector<double>& theta) {
  if (terms.empty()) return {};
  Vector out = Vector::Zero(terms.front().op.size());
  for (std::size_t q = 0; q < terms.size(); ++q) out += theta[q] * terms[q].op;
  return out;
}

SparseMatrix system_matrix(const TruthProblem& problem, const Parameter& mu, bool stabilized) {
  const Thetas th = evaluate_thetas(problem, mu);
  SparseMatrix A = combine(problem.decomposition.a, th.a);
  if (stabilized && !problem.decomposition.s.empty()) A += combine(problem.decomposition.s, th.s);
  return A;
}

Vector system_rhs(const TruthProblem& problem, const Parameter& mu, bool stabilized) {
  const Thetas th = evaluate_thetas(problem, mu);
  Vector b = Vector::Zero(problem.num_free());
  if (!problem.decomposition.f.empty()) b += combine(problem.decomposition.f, th.f);
  if (stabilized && !problem.decomposition.r.empty()) b += combine(problem.decomposition.r, th.r);
  return b;
}

SparseMatrix mass_matrix(const TruthProblem& problem, const Parameter& mu, bool stabilized) {
  if (!problem.is_parabolic()) throw InvalidArgument(problem.id + ": problem has no mass terms");
  const Thetas th = evaluate_thetas(problem, mu);
  SparseMatrix M = combine(problem.decomposition.m, th.m);
  if (stabilized && !problem.decomposition.m_stab.empty()) M += combine(problem.decomposition.m_stab, th.m_stab);
  return M;
}

SparseMatrix energy_matrix(const TruthProblem& problem, const Parameter& mu) {
  check_parameter(problem, mu);
  const auto& d = problem.decomposition;
  SparseMatrix D(problem.num_free(), problem.num_free());
  for (int q : d.diffusion_terms) D += d.a[q].theta(mu) * d.a[q].op;
  return D;
}

SparseMatrix streamline_matrix(const TruthProblem& problem, const Parameter& mu) {
  check_parameter(problem, mu);
  if (problem.streamline_gram.empty()) throw InvalidArgument(problem.id + ": no streamline Gram terms");
  return combine(problem.streamline_gram, eval(problem.streamline_gram, mu));
}

ProblemBuilder::ProblemBuilder(std::string id, fem::Mesh mesh, const std::vector<fem::DirichletCondition>& dirichlet,
                               fem::CornerRule corner_rule, ParameterBox domain) {
  domain.validate();
  problem_.id = std::move(id);
  problem_.mesh = std::move(mesh);
  problem_.lifting = fem::build_lifting(problem_.mesh, dirichlet, corner_rule);
  problem_.domain = std::move(domain);
  if (problem_.lifting.num_free() == 0) throw InvalidArgument(problem_.id + ": no free dofs");

  fem::TermDescriptor mass{.kind = fem::TermKind::kMass};
  fem::TermDescriptor stiff{.kind = fem::TermKind::kDiffusionFull};
  problem_.full_mass = fem::assemble_matrix(problem_.mesh, mass);
  problem_.reference_mass = fem::restrict_matrix(problem_.full_mass, problem_.lifting);
  problem_.x_inner = fem::restrict_matrix(fem::assemble_matrix(problem_.mesh, stiff), problem_.lifting) +
                     problem_.reference_mass;
  const double h = *std::max_element(problem_.mesh.diameters.begin(), problem_.mesh.diameters.end());
  problem_.hmax = [h](const Parameter&) { return h; };
}

SparseMatrix ProblemBuilder::restricted(const fem::TermDescriptor& term, SparseMatrix* full_out) const {
  SparseMatrix full = fem::assemble_matrix(problem_.mesh, term);
  SparseMatrix out = fem::restrict_matrix(full, problem_.lifting);
  if (full_out) *full_out = std::move(full);
  return out;
}

ProblemBuilder& ProblemBuilder::add_a(std::string name, ThetaFn theta, const fem::TermDescriptor& term,
                                      bool diffusion) {
  SparseMatrix full;
  SparseMatrix op = restricted(term, &full);
  if (diffusion) problem_.decomposition.diffusion_terms.push_back(static_cast<int>(problem_.decomposition.a.size()));
  a_full_names_.emplace_back(name, theta);
  a_full_.push_back(std::move(full));
  problem_.decomposition.a.push_back({std::move(name), std::move(theta), std::move(op)});
  return *this;
}

ProblemBuilder& ProblemBuilder::add_s(std::string name, ThetaFn theta, const fem::TermDescriptor& term) {
  SparseMatrix full;
  SparseMatrix op = restricted(term, &full);
  s_full_names_.emplace_back(name, theta);
  s_full_.push_back(std::move(full));
  problem_.decomposition.s.push_back({std::move(name), std::move(theta), std::move(op)});
  return *this;
}

ProblemBuilder& ProblemBuilder::add_m(std::string name, ThetaFn theta, const fem::TermDescriptor& term) {
  problem_.decomposition.m.push_back({std::move(name), std::move(theta), restricted(term)});
  return *this;
}

ProblemBuilder& ProblemBuilder::add_m_stab(std::string name, ThetaFn theta, const fem::TermDescriptor& term) {
  problem_.decomposition.m_stab.push_back({std::move(name), std::move(theta), restricted(term)});
  return *this;
}

ProblemBuilder& ProblemBuilder::add_source(std::string name, ThetaFn theta, const fem::TermDescriptor& term) {
  Vector v = fem::restrict_vector(fem::assemble_vector(problem_.mesh, term), problem_.lifting);
  auto& target = term.kind == fem::TermKind::kRhsSupg ? r_sources_ : f_sources_;
  target.push_back({std::move(name), std::move(theta), std::move(v)});
  return *this;
}

ProblemBuilder& ProblemBuilder::add_streamline(std::string name, ThetaFn theta, const fem::TermDescriptor& term) {
  problem_.streamline_gram.push_back({std::move(name), std::move(theta), fem::assemble_matrix(problem_.mesh, term)});
  return *this;
}

ProblemBuilder& ProblemBuilder::set_hmax(std::function<double(const Parameter&)> hmax) {
  problem_.hmax = std::move(hmax);
  return *this;
}

ProblemBuilder& ProblemBuilder::set_beta_sup(double value) {
  problem_.beta_sup = value;
  return *this;
}

ProblemBuilder& ProblemBuilder::set_transient(TransientSetup setup) {
  setup.grid.validate();
  if (!setup.initial) throw InvalidArgument(problem_.id + ": transient setup needs an initial field");
  problem_.transient = std::move(setup);
  return *this;
}

TruthProblem ProblemBuilder::build() {
  auto& d = problem_.decomposition;
  if (d.a.empty()) throw InvalidArgument(problem_.id + ": no bilinear terms");
  if (d.diffusion_terms.empty()) throw InvalidArgument(problem_.id + ": no diffusion terms flagged");
  if (problem_.transient && d.m.empty()) throw InvalidArgument(problem_.id + ": transient setup without mass terms");

  const Vector& l = problem_.lifting.lifting;
  const bool lifted = l.norm() > 0.0;
  for (auto& src : f_sources_) d.f.push_back(std::move(src));
  for (auto& src : r_sources_) d.r.push_back(std::move(src));
  if (lifted) {
    for (std::size_t q = 0; q < a_full_.size(); ++q) {
      Vector piece = -fem::restrict_vector(a_full_[q] * l, problem_.lifting);
      d.f.push_back({"lift:" + a_full_names_[q].first, a_full_names_[q].second, std::move(piece)});
    }
    for (std::size_t q = 0; q < s_full_.size(); ++q) {
      Vector piece = -fem::restrict_vector(s_full_[q] * l, problem_.lifting);
      d.r.push_back({"lift:" + s_full_names_[q].first, s_full_names_[q].second, std::move(piece)});
    }
  }
  a_full_.clear();
  s_full_.clear();
  return std::move(problem_);
}

}  // namespace wrb::problems
