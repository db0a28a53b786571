#include <benchmark/benchmark.h>

#include "wrb/fem/assembly.hpp"
#include "wrb/parabolic/pod_greedy.hpp"
#include "wrb/parabolic/transient.hpp"
#include "wrb/problems/benchmarks.hpp"
#include "wrb/problems/truth.hpp"
#include "wrb/rb/greedy.hpp"
#include "wrb/rb/online.hpp"
#include "wrb/stochastic/distribution.hpp"

using namespace wrb;

namespace {

const stochastic::ParamDistribution& law() {
  static const stochastic::ParamDistribution d(
      {stochastic::ComponentLaw::log_beta(1, 5, 4, 2), stochastic::ComponentLaw::affine_beta(0.5, 4, 3, 4)});
  return d;
}

const problems::TruthProblem& graetz(bool transient) {
  static const auto make = [](bool t) {
    problems::GraetzOptions o;
    o.domain = {{10.0, 0.5}, {1e6, 4.0}};
    o.transient = t;
    return problems::build_graetz(o);
  };
  static const problems::TruthProblem steady = make(false);
  static const problems::TruthProblem unsteady = make(true);
  return transient ? unsteady : steady;
}

const rb::ReducedSpace& steady_space() {
  static const rb::ReducedSpace s = [] {
    rb::GreedyOptions o;
    o.max_basis = 20;
    o.tolerance = 0.0;
    return rb::greedy(graetz(false), law().sample(100, 1), {}, o).space;
  }();
  return s;
}

const rb::ReducedSpace& transient_space() {
  static const rb::ReducedSpace s = [] {
    parabolic::PodGreedyOptions o;
    o.max_basis = 20;
    o.tolerance = 0.0;
    return parabolic::pod_greedy(graetz(true), law().sample(50, 1), {}, o).space;
  }();
  return s;
}

const Parameter kMu{2.5e4, 1.7};

}  // namespace

static void BM_AssembleStiffness(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const fem::Mesh m = fem::build_structured_mesh({0.0, 1.0, 0.0, 1.0}, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(fem::assemble_matrix(m, {.kind = fem::TermKind::kDiffusionFull}));
  state.SetItemsProcessed(state.iterations() * m.num_triangles());
}
BENCHMARK(BM_AssembleStiffness)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_BuildGraetz(benchmark::State& state) {
  for (auto _ : state) {
    problems::GraetzOptions o;
    benchmark::DoNotOptimize(problems::build_graetz(o));
  }
}
BENCHMARK(BM_BuildGraetz)->Unit(benchmark::kMillisecond);

static void BM_TruthSolveGraetz(benchmark::State& state) {
  const auto& p = graetz(false);
  for (auto _ : state) benchmark::DoNotOptimize(problems::truth_solve_free(p, kMu, true));
}
BENCHMARK(BM_TruthSolveGraetz)->Unit(benchmark::kMillisecond);

static void BM_RbSolveGraetz(benchmark::State& state) {
  const auto& p = graetz(false);
  const auto& s = steady_space();
  for (auto _ : state) benchmark::DoNotOptimize(rb::rb_solve(p, s, kMu, state.range(0) != 0));
}
BENCHMARK(BM_RbSolveGraetz)->Arg(1)->Arg(0)->Unit(benchmark::kMicrosecond);

static void BM_EstimatorGraetz(benchmark::State& state) {
  const auto& p = graetz(false);
  const auto& s = steady_space();
  const Vector c = rb::rb_solve(p, s, kMu, true);
  for (auto _ : state) benchmark::DoNotOptimize(rb::error_estimator(p, s, kMu, c, true));
}
BENCHMARK(BM_EstimatorGraetz)->Unit(benchmark::kMicrosecond);

static void BM_TruthTransientGraetz(benchmark::State& state) {
  const auto& p = graetz(true);
  for (auto _ : state) benchmark::DoNotOptimize(problems::truth_solve_transient(p, kMu, true));
}
BENCHMARK(BM_TruthTransientGraetz)->Unit(benchmark::kMillisecond);

static void BM_TransientRbGraetz(benchmark::State& state) {
  const auto& p = graetz(true);
  const auto& s = transient_space();
  for (auto _ : state) {
    const auto red = parabolic::transient_rb_solve(p, s, kMu, true);
    benchmark::DoNotOptimize(parabolic::parabolic_error_estimator(p, s, kMu, red, true));
  }
}
BENCHMARK(BM_TransientRbGraetz)->Unit(benchmark::kMicrosecond);

static void BM_BetaSampling(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(law().sample(static_cast<std::size_t>(state.range(0)), 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BetaSampling)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
