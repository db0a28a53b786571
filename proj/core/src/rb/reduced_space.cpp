#include "wrb/rb/reduced_space.hpp"

namespace wrb::rb {

ReducedSpace truncate(const ReducedSpace& space, int n) {
  if (n < 0 || n > space.size()) throw InvalidArgument("truncate: requested size exceeds the reduced space");
  ReducedSpace out;
  out.problem_id = space.problem_id;
  out.num_free = space.num_free;
  out.basis = space.basis.leftCols(n);
  out.selected = space.selected;
  if (static_cast<int>(out.selected.size()) == space.size()) out.selected.resize(n);
  auto blocks = [n](const std::vector<Matrix>& in) {
    std::vector<Matrix> o;
    for (const auto& b : in) o.emplace_back(b.topLeftCorner(n, n));
    return o;
  };
  auto heads = [n](const std::vector<Vector>& in) {
    std::vector<Vector> o;
    for (const auto& b : in) o.emplace_back(b.head(n));
    return o;
  };
  auto cols = [n](const std::vector<Matrix>& in) {
    std::vector<Matrix> o;
    for (const auto& b : in) o.emplace_back(b.leftCols(n));
    return o;
  };
  out.a = blocks(space.a);
  out.s = blocks(space.s);
  out.m = blocks(space.m);
  out.m_stab = blocks(space.m_stab);
  out.f = heads(space.f);
  out.r = heads(space.r);
  out.res_f = space.res_f;
  out.res_r = space.res_r;
  out.res_a = cols(space.res_a);
  out.res_s = cols(space.res_s);
  out.res_m = cols(space.res_m);
  out.res_m_stab = cols(space.res_m_stab);
  out.coercivity = space.coercivity;
  out.has_initial = space.has_initial;
  if (space.has_initial) {
    out.initial = space.initial.head(n);
    out.initial_mass_self = space.initial_mass_self;
    out.initial_mass_cross = heads(space.initial_mass_cross);
  }
  return out;
}

ReducedSpaceBuilder::ReducedSpaceBuilder(const problems::TruthProblem& problem, CoercivityData coercivity)
    : problem_(&problem),
      coercivity_(std::move(coercivity)),
      basis_(&problem.x_inner),
      representers_(&problem.x_inner) {
  x_solver_.compute(problem.x_inner);
  if (x_solver_.info() != Eigen::Success) throw NumericalFailure(problem.id + ": X inner product factorization failed");
  const auto& d = problem.decomposition;
  for (const auto* terms : {&d.a, &d.s, &d.m, &d.m_stab}) {
    groups_.push_back({terms, std::vector<std::vector<int>>(terms->size())});
  }
  for (const auto& t : d.f) f_columns_.push_back(add_piece(t.op));
  for (const auto& t : d.r) r_columns_.push_back(add_piece(t.op));
}

int ReducedSpaceBuilder::add_piece(const Vector& p) {
  const int col = static_cast<int>(pieces_.size());
  pieces_.push_back(p);
  const int k = representers_.size();
  coordinates_.conservativeResize(k, col + 1);
  if (k > 0) coordinates_.col(col) = representers_.vectors().transpose() * p;

  const Vector riesz = x_solver_.solve(p);
  if (representers_.append(riesz, p)) {
    coordinates_.conservativeResize(k + 1, Eigen::NoChange);
    // Coordinate of representer X⁻¹p along w is wᵀ X X⁻¹ p = wᵀ p.
    const auto w = representers_.vectors().col(k);
    for (int j = 0; j <= col; ++j) coordinates_(k, j) = w.dot(pieces_[j]);
  }
  return col;
}

bool ReducedSpaceBuilder::append(const Vector& v) {
  if (v.size() != problem_->num_free()) throw InvalidArgument("reduced space: snapshot has wrong length");
  if (!basis_.append(v)) return false;
  const Vector xi = basis_.vectors().col(basis_.size() - 1);
  for (auto& g : groups_) {
    for (std::size_t q = 0; q < g.terms->size(); ++q) g.columns[q].push_back(add_piece((*g.terms)[q].op * xi));
  }
  return true;
}

void ReducedSpaceBuilder::set_initial(const Vector& initial_free) {
  if (initial_free.size() != problem_->num_free()) throw InvalidArgument("reduced space: initial state has wrong length");
  initial_free_ = initial_free;
  has_initial_ = true;
}

ReducedSpace ReducedSpaceBuilder::space() const {
  ReducedSpace out;
  out.problem_id = problem_->id;
  out.num_free = problem_->num_free();
  const int n = basis_.size();
  out.basis = n > 0 ? basis_.vectors() : Matrix(problem_->num_free(), 0);
  out.selected = selected_;
  out.coercivity = coercivity_;
  const int k = representers_.size();

  auto gather = [&](const std::vector<int>& columns) {
    Matrix m(k, static_cast<Eigen::Index>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = coordinates_.col(columns[j]);
    return m;
  };
  auto project = [&](const std::vector<int>& columns) {
    Matrix m(n, static_cast<Eigen::Index>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j) {
      m.col(static_cast<Eigen::Index>(j)) = out.basis.transpose() * pieces_[columns[j]];
    }
    return m;
  };

  const Matrix pf = project(f_columns_);
  const Matrix pr = project(r_columns_);
  for (Eigen::Index q = 0; q < pf.cols(); ++q) out.f.emplace_back(pf.col(q));
  for (Eigen::Index q = 0; q < pr.cols(); ++q) out.r.emplace_back(pr.col(q));
  out.res_f = gather(f_columns_);
  out.res_r = gather(r_columns_);

  std::vector<Matrix>* blocks[] = {&out.a, &out.s, &out.m, &out.m_stab};
  std::vector<Matrix>* residuals[] = {&out.res_a, &out.res_s, &out.res_m, &out.res_m_stab};
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    for (const auto& columns : groups_[g].columns) {
      blocks[g]->push_back(project(columns));
      residuals[g]->push_back(gather(columns));
    }
  }

  if (has_initial_) {
    out.has_initial = true;
    out.initial = n > 0 ? Vector(basis_.x_vectors().transpose() * initial_free_) : Vector(0);
    for (const auto& term : problem_->decomposition.m) {
      const Vector mu0 = term.op * initial_free_;
      out.initial_mass_self.push_back(initial_free_.dot(mu0));
      out.initial_mass_cross.emplace_back(n > 0 ? Vector(out.basis.transpose() * mu0) : Vector(0));
    }
  }
  return out;
}

}  // namespace wrb::rb
