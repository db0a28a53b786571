#include "wrb_cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wrb/parabolic/pod_greedy.hpp"
#include "wrb/parabolic/transient.hpp"
#include "wrb/problems/truth.hpp"
#include "wrb/rb/greedy.hpp"
#include "wrb/rb/online.hpp"
#include "wrb/selective/sweep.hpp"
#include "wrb/stochastic/evaluation.hpp"
#include "wrb_cli/csv.hpp"
#include "wrb_cli/space_io.hpp"

namespace wrb::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

template <typename F>
double median_seconds(int repeats, F&& f) {
  std::vector<double> times;
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = clock_type::now();
    f();
    times.push_back(seconds_since(t0));
  }
  std::nth_element(times.begin(), times.begin() + repeats / 2, times.end());
  return times[repeats / 2];
}

fs::path prepare_dir(const std::string& dir) {
  fs::path p(dir);
  fs::create_directories(p);
  return p;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

json provenance(const RunConfig& config) {
  return {{"config_hash", config.hash()},
          {"greedy_seed", config.greedy.seed},
          {"evaluation_seed", config.evaluation.seed},
          {"problem", config.problem_name()}};
}

StoredSpace load_compatible(const RunConfig& config, const problems::TruthProblem& problem, const std::string& path) {
  StoredSpace stored = load_space(path);
  if (stored.space.problem_id != problem.id || stored.space.num_free != problem.num_free()) {
    throw InvalidArgument(path + ": space belongs to problem '" + stored.space.problem_id + "' with " +
                          std::to_string(stored.space.num_free) + " free dofs, config describes '" + problem.id +
                          "' with " + std::to_string(problem.num_free()));
  }
  if (stored.meta.contains("discretization") && stored.meta.at("discretization") != config.discretization()) {
    throw InvalidArgument(path + ": space was built for discretization " + stored.meta.at("discretization").dump() +
                          ", config describes " + config.discretization().dump());
  }
  return stored;
}

std::size_t nearest_node(const fem::Mesh& mesh, const fem::Point& target) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
    const double d = std::hypot(mesh.nodes[i].x - target.x, mesh.nodes[i].y - target.y);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

fem::Point probe_point(const RunConfig& config) {
  return config.problem == ProblemKind::kGraetz ? fem::Point{1.5, 0.5} : fem::Point{0.5, 0.5};
}

void dump_field(const fs::path& path, const fem::Mesh& mesh, const Vector& field) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << "# x y u\n";
  for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
    out << format_double(mesh.nodes[i].x) << ' ' << format_double(mesh.nodes[i].y) << ' '
        << format_double(field[static_cast<Eigen::Index>(i)]) << '\n';
  }
}

std::vector<Parameter> sample_mode(const stochastic::ParamDistribution& dist, const std::string& mode, std::size_t n,
                                   std::uint64_t seed) {
  return mode == "beta" ? dist.sample(n, seed) : dist.sample_uniform(n, seed);
}

}  // namespace

Parameter parse_parameter(const std::string& text) {
  std::string s = text;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  Parameter mu;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) throw InvalidArgument("cannot parse parameter component '" + token + "'");
    mu.push_back(v);
  }
  if (mu.empty()) throw InvalidArgument("empty parameter");
  return mu;
}

std::vector<Parameter> read_parameter_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open parameter file " + path);
  std::vector<Parameter> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(parse_parameter(line));
  }
  return out;
}

json cmd_offline(const RunConfig& config, const std::string& out_dir) {
  const fs::path dir = prepare_dir(out_dir);
  const auto t_start = clock_type::now();
  const problems::TruthProblem problem = config.make_problem();
  const auto dist = config.make_distribution();
  const auto& g = config.greedy;
  std::vector<Parameter> training =
      g.weighted ? dist.sample(g.training_size, g.seed) : dist.sample_uniform(g.training_size, g.seed);
  const rb::WeightFn weight = g.weighted ? stochastic::sqrt_density_weight(dist) : rb::WeightFn{};

  const auto t_greedy = clock_type::now();
  rb::GreedyResult result;
  if (config.parabolic) {
    parabolic::PodGreedyOptions o;
    o.tolerance = g.tolerance;
    o.max_basis = g.max_basis;
    o.modes_per_iteration = g.modes_per_iteration;
    o.pod_energy_tol = g.pod_energy_tol;
    o.offline_stabilized = config.stabilization.offline;
    o.online_stabilized = config.stabilization.online.kind != "never";
    o.trace_true_error = g.trace_true_error;
    result = parabolic::pod_greedy(problem, training, weight, o);
  } else {
    rb::GreedyOptions o;
    o.tolerance = g.tolerance;
    o.max_basis = g.max_basis;
    o.offline_stabilized = config.stabilization.offline;
    o.online_stabilized = config.stabilization.online.kind != "never";
    o.trace_true_error = g.trace_true_error;
    result = rb::greedy(problem, training, weight, o);
  }
  const double greedy_seconds = seconds_since(t_greedy);

  const auto& trace = result.trace;
  const double final_max = trace.records.empty() ? trace.initial_max_estimator : trace.records.back().max_estimator;
  const double final_weighted =
      trace.records.empty() ? trace.initial_max_weighted_estimator : trace.records.back().max_weighted_estimator;

  StoredSpace stored{result.space, json::object()};
  stored.meta = provenance(config);
  stored.meta["discretization"] = config.discretization();
  stored.meta["weighted"] = g.weighted;
  stored.meta["offline_stabilized"] = config.stabilization.offline;
  stored.meta["greedy_tolerance"] = g.tolerance;
  stored.meta["final_max_estimator"] = final_max;
  save_space((dir / "space.wrbs").string(), stored);

  CsvWriter csv((dir / "trace.csv").string(),
                {"n", "selected_mu1", "selected_mu2", "max_estimator", "max_weighted_estimator", "max_true_error",
                 "seconds"},
                config.hash(), g.seed);
  for (const auto& r : trace.records) {
    csv.cell(r.n).cell(r.selected.at(0)).cell(r.selected.at(1)).cell(r.max_estimator).cell(r.max_weighted_estimator);
    csv.cell(r.max_true_error).cell(r.seconds).end_row();
  }

  json summary = provenance(config);
  summary["command"] = "offline";
  summary["parabolic"] = config.parabolic.has_value();
  summary["weighted"] = g.weighted;
  summary["training_size"] = g.training_size;
  summary["num_free"] = problem.num_free();
  summary["final_n"] = result.space.size();
  summary["initial_max_estimator"] = trace.initial_max_estimator;
  summary["final_max_estimator"] = final_max;
  summary["final_max_weighted_estimator"] = final_weighted;
  summary["alpha_reference"] = result.space.coercivity.alpha_reference;
  summary["selected_parameters"] = result.space.selected;
  summary["rejected_parameters"] = trace.rejected;
  summary["greedy_seconds"] = greedy_seconds;
  summary["total_seconds"] = seconds_since(t_start);
  write_json(dir / "summary.json", summary);
  return summary;
}

json cmd_online(const RunConfig& config, const std::string& space_path, const std::vector<Parameter>& mus,
                const std::string& out_dir, OnlineVariant variant) {
  const fs::path dir = prepare_dir(out_dir);
  const problems::TruthProblem problem = config.make_problem();
  const StoredSpace stored = load_compatible(config, problem, space_path);
  const auto& space = stored.space;
  const auto dist = config.make_distribution();
  const auto policy = config.make_policy(dist, config.evaluation.seed);
  const std::size_t probe = nearest_node(problem.mesh, probe_point(config));

  for (const auto& mu : mus) problems::check_parameter(problem, mu);

  CsvWriter csv((dir / "online.csv").string(),
                {"index", "mu1", "mu2", "stabilized", "estimator", "online_seconds", "field_min", "field_max", "probe"},
                config.hash(), config.evaluation.seed);
  json rows = json::array();
  for (std::size_t i = 0; i < mus.size(); ++i) {
    const Parameter& mu = mus[i];
    const bool stab = variant == OnlineVariant::kStabilized ? true
                      : variant == OnlineVariant::kPlain    ? false
                                                            : selective::decide_stabilize(policy, mu, dist);
    double estimator = 0.0;
    double seconds = 0.0;
    Vector field;
    if (config.parabolic) {
      parabolic::ReducedTrajectory traj;
      seconds = median_seconds(5, [&] { traj = parabolic::transient_rb_solve(problem, space, mu, stab); });
      estimator = parabolic::parabolic_error_estimator(problem, space, mu, traj, stab);
      CsvWriter tcsv((dir / ("trajectory_" + std::to_string(i) + ".csv")).string(), {"t", "control", "probe"},
                     config.hash(), config.evaluation.seed);
      for (int j = 0; j <= traj.steps(); ++j) {
        const Vector full = problems::full_field(problem, rb::reconstruct(space, traj.coeffs[j]), traj.controls[j]);
        tcsv.cell(traj.times[j]).cell(traj.controls[j]).cell(full[static_cast<Eigen::Index>(probe)]).end_row();
      }
      field = problems::full_field(problem, rb::reconstruct(space, traj.coeffs.back()), traj.controls.back());
    } else {
      Vector c;
      seconds = median_seconds(5, [&] { c = rb::rb_solve(problem, space, mu, stab); });
      estimator = rb::error_estimator(problem, space, mu, c, stab);
      field = problems::full_field(problem, rb::reconstruct(space, c));
    }
    dump_field(dir / ("field_" + std::to_string(i) + ".txt"), problem.mesh, field);
    const double probe_value = field[static_cast<Eigen::Index>(probe)];
    csv.cell(i).cell(mu.at(0)).cell(mu.at(1)).cell(stab).cell(estimator).cell(seconds);
    csv.cell(field.minCoeff()).cell(field.maxCoeff()).cell(probe_value).end_row();
    rows.push_back({{"mu", mu}, {"stabilized", stab}, {"estimator", estimator}, {"online_seconds", seconds}});
  }
  json summary = provenance(config);
  summary["command"] = "online";
  summary["space"] = space_path;
  summary["solves"] = rows;
  write_json(dir / "summary.json", summary);
  return summary;
}

json cmd_evaluate(const RunConfig& config, const std::vector<std::string>& space_paths, const std::string& out_dir) {
  if (space_paths.empty()) throw InvalidArgument("evaluate: at least one space is required");
  const fs::path dir = prepare_dir(out_dir);
  const problems::TruthProblem problem = config.make_problem();
  const auto dist = config.make_distribution();
  const auto policy = config.make_policy(dist, config.evaluation.seed);
  const auto& ev = config.evaluation;

  std::vector<StoredSpace> spaces;
  for (const auto& p : space_paths) spaces.push_back(load_compatible(config, problem, p));

  CsvWriter csv((dir / "errors.csv").string(),
                {"series", "mode", "index", "mu1", "mu2", "stabilized", "error", "estimator", "truth_seconds",
                 "online_seconds"},
                config.hash(), ev.seed);
  json summary = provenance(config);
  summary["command"] = "evaluate";
  summary["test_size"] = ev.test_size;
  summary["evaluated"] = ev.test_size > 0;
  json series = json::object();

  for (const auto& mode : ev.modes) {
    const auto points = sample_mode(dist, mode, ev.test_size, ev.seed);
    // Truth trajectories are shared by every series.
    std::vector<Vector> steady;
    std::vector<problems::Trajectory> transient;
    std::vector<double> truth_seconds;
    for (const auto& mu : points) {
      const auto t0 = clock_type::now();
      if (config.parabolic) {
        transient.push_back(problems::truth_solve_transient(problem, mu, true));
      } else {
        steady.push_back(problems::truth_solve_free(problem, mu, true));
      }
      truth_seconds.push_back(seconds_since(t0));
    }
    for (std::size_t si = 0; si < spaces.size(); ++si) {
      const auto& space = spaces[si].space;
      const std::string label = fs::path(space_paths[si]).parent_path().filename().string().empty()
                                    ? fs::path(space_paths[si]).stem().string()
                                    : fs::path(space_paths[si]).parent_path().filename().string();
      const std::string name = spaces.size() == 1 ? label : label + "#" + std::to_string(si);
      std::vector<stochastic::TestPoint> results;
      for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& mu = points[i];
        stochastic::TestPoint tp;
        tp.mu = mu;
        tp.stabilized = selective::decide_stabilize(policy, mu, dist);
        tp.truth_seconds = truth_seconds[i];
        const auto t0 = clock_type::now();
        if (config.parabolic) {
          const auto red = parabolic::transient_rb_solve(problem, space, mu, tp.stabilized);
          tp.online_seconds = seconds_since(t0);
          tp.estimator = parabolic::parabolic_error_estimator(problem, space, mu, red, tp.stabilized);
          tp.error = parabolic::spacetime_error(problem, mu, transient[i], parabolic::reconstruct(space, red));
        } else {
          const Vector c = rb::rb_solve(problem, space, mu, tp.stabilized);
          tp.online_seconds = seconds_since(t0);
          tp.estimator = rb::error_estimator(problem, space, mu, c, tp.stabilized);
          tp.error = rb::energy_norm(problem, mu, steady[i] - rb::reconstruct(space, c));
        }
        csv.cell(name).cell(mode).cell(i).cell(mu.at(0)).cell(mu.at(1)).cell(tp.stabilized).cell(tp.error);
        csv.cell(tp.estimator).cell(tp.truth_seconds).cell(tp.online_seconds).end_row();
        results.push_back(std::move(tp));
      }
      if (results.empty()) continue;
      const auto mc_mode =
          mode == "beta" ? stochastic::McMode::kBetaSampled : stochastic::McMode::kUniformImportance;
      const auto mean = stochastic::mc_mean_error(results, dist, mc_mode);
      std::vector<double> est;
      for (const auto& r : results) est.push_back(r.estimator);
      const auto mean_est = stochastic::sample_mean(est);
      std::size_t violations = 0;
      for (const auto& r : results) violations += r.error > r.estimator * (1.0 + 1e-10) ? 1 : 0;
      series[name][mode] = {{"mean_error", mean.mean},
                            {"standard_error", mean.standard_error},
                            {"samples", mean.samples},
                            {"mean_estimator", mean_est.mean},
                            {"bound_violations", violations}};
    }
  }
  summary["series"] = series;
  write_json(dir / "summary.json", summary);
  return summary;
}

namespace {

struct SweepInputs {
  problems::TruthProblem problem;
  StoredSpace stored;
  stochastic::ParamDistribution dist;
  std::vector<selective::DualPoint> error_points;
  std::vector<Parameter> percent_points;
};

SweepInputs sweep_inputs(const RunConfig& config, const std::string& space_path) {
  if (config.parabolic) throw InvalidArgument("sweeps are defined for steady problems only");
  const auto& ev = config.evaluation;
  if (ev.test_size < 1) throw ConfigError("evaluation.test_size: sweeps need at least one test point");
  SweepInputs in{config.make_problem(), {}, config.make_distribution(), {}, {}};
  in.stored = load_compatible(config, in.problem, space_path);
  in.error_points = selective::evaluate_dual(in.problem, in.stored.space, in.dist, in.dist.sample(ev.test_size, ev.seed));
  const std::size_t n_uniform = ev.uniform_test_size > 0 ? ev.uniform_test_size : ev.test_size;
  in.percent_points = in.dist.sample_uniform(n_uniform, ev.seed + 1);
  return in;
}

}  // namespace

json cmd_sweep_threshold(const RunConfig& config, const std::string& space_path, const std::string& out_dir) {
  const auto& ev = config.evaluation;
  if (ev.thresholds.empty()) throw ConfigError("evaluation.thresholds: required for sweep-threshold");
  const fs::path dir = prepare_dir(out_dir);
  const SweepInputs in = sweep_inputs(config, space_path);
  const auto rows = selective::sweep_parameter_threshold(in.error_points, in.percent_points, in.dist,
                                                         ev.threshold_component, ev.thresholds,
                                                         stochastic::McMode::kBetaSampled);
  CsvWriter csv((dir / "sweep_threshold.csv").string(), {"threshold", "error", "standard_error", "percent_unstabilized"},
                config.hash(), ev.seed);
  json table = json::array();
  for (const auto& r : rows) {
    csv.cell(r.threshold).cell(r.error).cell(r.standard_error).cell(r.percent_unstabilized).end_row();
    table.push_back({{"threshold", r.threshold}, {"error", r.error}, {"percent_unstabilized", r.percent_unstabilized}});
  }
  json summary = provenance(config);
  summary["command"] = "sweep-threshold";
  summary["component"] = ev.threshold_component;
  summary["test_size"] = in.error_points.size();
  summary["uniform_test_size"] = in.percent_points.size();
  summary["rows"] = table;
  write_json(dir / "summary.json", summary);
  return summary;
}

json cmd_sweep_density(const RunConfig& config, const std::string& space_path, const std::string& out_dir) {
  const auto& ev = config.evaluation;
  if (ev.nus.empty()) throw ConfigError("evaluation.nus: required for sweep-density");
  const fs::path dir = prepare_dir(out_dir);
  const SweepInputs in = sweep_inputs(config, space_path);
  const auto rows = selective::sweep_density_threshold(in.error_points, in.percent_points, in.dist, ev.nus, ev.n_mc,
                                                       ev.seed + 2, stochastic::McMode::kBetaSampled);
  CsvWriter csv((dir / "sweep_density.csv").string(),
                {"nu", "density_threshold", "error", "standard_error", "percent_unstabilized"}, config.hash(), ev.seed);
  json table = json::array();
  for (const auto& r : rows) {
    csv.cell(r.threshold).cell(r.density_level).cell(r.error).cell(r.standard_error).cell(r.percent_unstabilized);
    csv.end_row();
    table.push_back({{"nu", r.threshold},
                     {"density_threshold", std::isinf(r.density_level) ? json("inf") : json(r.density_level)},
                     {"error", r.error},
                     {"percent_unstabilized", r.percent_unstabilized}});
  }
  json summary = provenance(config);
  summary["command"] = "sweep-density";
  summary["test_size"] = in.error_points.size();
  summary["uniform_test_size"] = in.percent_points.size();
  summary["rows"] = table;

  if (ev.mean_error_tolerance) {
    const double eps = in.stored.meta.value("final_max_estimator", config.greedy.tolerance);
    std::vector<Parameter> mus;
    for (const auto& p : in.error_points) mus.push_back(p.mu);
    const auto calibration = selective::calibrate(in.problem, in.stored.space, in.dist, mus, eps);
    const auto choice = selective::tune_nu(calibration, in.dist, *ev.mean_error_tolerance, ev.n_mc, ev.seed + 2);
    summary["tuning"] = {{"tolerance", *ev.mean_error_tolerance},
                         {"greedy_tolerance", eps},
                         {"nu", choice.nu},
                         {"density_threshold", choice.density_level},
                         {"mixed_bound", choice.bound},
                         {"satisfied", choice.satisfied}};
  }
  write_json(dir / "summary.json", summary);
  return summary;
}

}  // namespace wrb::cli
