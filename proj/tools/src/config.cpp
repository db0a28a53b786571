#include "wrb_cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "wrb/problems/benchmarks.hpp"

namespace wrb::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ConfigError(path + ": " + what); }

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) fail(path.empty() ? key : path + "." + key, "unknown field");
  }
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

double get_number(const json& obj, const std::string& path, const std::string& key, std::optional<double> fallback = {}) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    fail(join(path, key), "required field is missing");
  }
  const auto& v = obj.at(key);
  if (!v.is_number()) fail(join(path, key), "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(join(path, key), "must be finite");
  return d;
}

long long get_integer(const json& obj, const std::string& path, const std::string& key, std::optional<long long> fallback = {}) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    fail(join(path, key), "required field is missing");
  }
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) fail(join(path, key), "expected an integer");
  return v.get<long long>();
}

bool get_bool(const json& obj, const std::string& path, const std::string& key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_boolean()) fail(join(path, key), "expected true or false");
  return obj.at(key).get<bool>();
}

std::string get_string(const json& obj, const std::string& path, const std::string& key,
                       std::optional<std::string> fallback = {}) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    fail(join(path, key), "required field is missing");
  }
  if (!obj.at(key).is_string()) fail(join(path, key), "expected a string");
  return obj.at(key).get<std::string>();
}

std::vector<double> get_numbers(const json& obj, const std::string& path, const std::string& key) {
  std::vector<double> out;
  if (!obj.contains(key)) return out;
  const auto& arr = obj.at(key);
  if (!arr.is_array()) fail(join(path, key), "expected an array of numbers");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) fail(join(path, key) + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(arr[i].get<double>());
  }
  return out;
}

std::size_t get_count(const json& obj, const std::string& path, const std::string& key, std::size_t fallback) {
  const long long v = get_integer(obj, path, key, static_cast<long long>(fallback));
  if (v < 0) fail(join(path, key), "must be nonnegative");
  return static_cast<std::size_t>(v);
}

stochastic::ComponentLaw make_law(const json& j, const std::string& path, const std::string& law) {
  if (law == "uniform") {
    check_keys(j, path, {"law", "lower", "upper"});
    return stochastic::ComponentLaw::uniform(get_number(j, path, "lower"), get_number(j, path, "upper"));
  }
  if (law == "affine_beta") {
    check_keys(j, path, {"law", "lower", "upper", "alpha", "beta"});
    return stochastic::ComponentLaw::affine_beta(get_number(j, path, "lower"), get_number(j, path, "upper"),
                                                 get_number(j, path, "alpha"), get_number(j, path, "beta"));
  }
  if (law == "log_beta") {
    check_keys(j, path, {"law", "log10_lower", "log10_span", "alpha", "beta"});
    return stochastic::ComponentLaw::log_beta(get_number(j, path, "log10_lower"), get_number(j, path, "log10_span"),
                                              get_number(j, path, "alpha"), get_number(j, path, "beta"));
  }
  if (law == "fixed") {
    check_keys(j, path, {"law", "value"});
    return stochastic::ComponentLaw::fixed(get_number(j, path, "value"));
  }
  fail(join(path, "law"), "unknown law '" + law + "' (uniform, affine_beta, log_beta, fixed)");
}

stochastic::ComponentLaw parse_law(const json& j, const std::string& path) {
  const auto law = make_law(j, path, get_string(j, path, "law"));
  try {
    law.validate();
  } catch (const InvalidArgument& e) {
    fail(path, e.what());
  }
  return law;
}

ScalarSpec parse_scalar(const json& j, const std::string& path) {
  check_keys(j, path, {"kind", "value", "amplitude", "frequency"});
  ScalarSpec s;
  s.kind = get_string(j, path, "kind");
  if (s.kind == "constant") {
    s.value = get_number(j, path, "value");
  } else if (s.kind == "cosine") {
    s.amplitude = get_number(j, path, "amplitude", 1.0);
    s.frequency = get_number(j, path, "frequency", 1.0);
  } else {
    fail(join(path, "kind"), "unknown kind '" + s.kind + "' (constant, cosine)");
  }
  return s;
}

std::function<double(double)> to_time_function(const ScalarSpec& s) {
  if (s.kind == "constant") return [v = s.value](double) { return v; };
  return [a = s.amplitude, w = s.frequency](double t) { return a * std::cos(w * t); };
}

}  // namespace

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunConfig parse_config(const json& doc) {
  check_keys(doc, "", {"problem", "mesh", "domain", "stabilization", "distribution", "greedy", "parabolic",
                       "evaluation", "output"});
  RunConfig c;
  c.canonical = doc.dump();

  const std::string problem = get_string(doc, "", "problem");
  if (problem == "graetz") {
    c.problem = ProblemKind::kGraetz;
    c.mesh = {92, 46};
  } else if (problem == "front_square") {
    c.problem = ProblemKind::kFrontSquare;
    c.mesh = {124, 124};
  } else {
    fail("problem", "unknown problem '" + problem + "' (graetz, front_square)");
  }

  if (doc.contains("mesh")) {
    const auto& m = doc.at("mesh");
    check_keys(m, "mesh", {"nx", "ny"});
    c.mesh.nx = static_cast<int>(get_integer(m, "mesh", "nx", c.mesh.nx));
    c.mesh.ny = static_cast<int>(get_integer(m, "mesh", "ny", c.mesh.ny));
    if (c.mesh.nx < 1 || c.mesh.ny < 1) fail("mesh", "nx and ny must be positive");
  }

  if (!doc.contains("distribution")) fail("distribution", "required field is missing");
  const auto& dist = doc.at("distribution");
  if (!dist.is_array() || dist.size() != 2) fail("distribution", "expected an array with one law per parameter (2)");
  for (std::size_t i = 0; i < dist.size(); ++i) c.distribution.push_back(parse_law(dist[i], "distribution[" + std::to_string(i) + "]"));

  if (doc.contains("domain")) {
    const auto& d = doc.at("domain");
    check_keys(d, "domain", {"lower", "upper"});
    ParameterBox box{get_numbers(d, "domain", "lower"), get_numbers(d, "domain", "upper")};
    if (box.lower.size() != 2 || box.upper.size() != 2) fail("domain", "lower and upper need 2 entries");
    try {
      box.validate();
    } catch (const InvalidArgument& e) {
      fail("domain", e.what());
    }
    for (std::size_t i = 0; i < 2; ++i) {
      if (c.distribution[i].lower() < box.lower[i] || c.distribution[i].upper() > box.upper[i]) {
        fail("distribution[" + std::to_string(i) + "]", "support leaves the parameter domain");
      }
    }
    c.domain = box;
  }

  if (doc.contains("stabilization")) {
    const auto& s = doc.at("stabilization");
    const std::string path = "stabilization";
    check_keys(s, path, {"delta", "scale_by_diameter", "offline", "online"});
    c.stabilization.delta = get_number(s, path, "delta", 1.0);
    if (!(c.stabilization.delta > 0.0)) fail(join(path, "delta"), "must be positive");
    c.stabilization.scale_by_diameter = get_bool(s, path, "scale_by_diameter", false);
    c.stabilization.offline = get_bool(s, path, "offline", true);
    if (s.contains("online")) {
      const auto& o = s.at("online");
      const std::string op = "stabilization.online";
      check_keys(o, op, {"policy", "component", "threshold", "nu", "n_mc"});
      auto& p = c.stabilization.online;
      p.kind = get_string(o, op, "policy", "always");
      if (p.kind == "parameter_threshold") {
        p.component = static_cast<int>(get_integer(o, op, "component", 0));
        p.threshold = get_number(o, op, "threshold");
        if (p.component < 0 || p.component > 1) fail(join(op, "component"), "must be 0 or 1");
      } else if (p.kind == "density_threshold") {
        p.nu = get_number(o, op, "nu");
        if (!(p.nu >= 0.0 && p.nu <= 1.0)) fail(join(op, "nu"), "must lie in [0, 1]");
        p.n_mc = get_count(o, op, "n_mc", p.n_mc);
      } else if (p.kind != "always" && p.kind != "never") {
        fail(join(op, "policy"), "unknown policy '" + p.kind + "' (always, never, parameter_threshold, density_threshold)");
      }
    }
  }

  if (doc.contains("greedy")) {
    const auto& g = doc.at("greedy");
    const std::string path = "greedy";
    check_keys(g, path, {"tolerance", "max_basis", "training_size", "weighted", "seed", "trace_true_error",
                         "modes_per_iteration", "pod_energy_tol"});
    auto& o = c.greedy;
    o.tolerance = get_number(g, path, "tolerance", o.tolerance);
    o.max_basis = static_cast<int>(get_integer(g, path, "max_basis", o.max_basis));
    o.training_size = get_count(g, path, "training_size", o.training_size);
    o.weighted = get_bool(g, path, "weighted", o.weighted);
    if (!g.contains("seed")) fail(join(path, "seed"), "required whenever training sets are sampled");
    const long long seed = get_integer(g, path, "seed");
    if (seed < 0) fail(join(path, "seed"), "must be nonnegative");
    o.seed = static_cast<std::uint64_t>(seed);
    o.trace_true_error = get_bool(g, path, "trace_true_error", o.trace_true_error);
    o.modes_per_iteration = static_cast<int>(get_integer(g, path, "modes_per_iteration", o.modes_per_iteration));
    o.pod_energy_tol = get_number(g, path, "pod_energy_tol", o.pod_energy_tol);
    if (o.max_basis < 1) fail(join(path, "max_basis"), "must be >= 1");
    if (o.training_size < 1) fail(join(path, "training_size"), "must be >= 1");
    if (o.modes_per_iteration < 1) fail(join(path, "modes_per_iteration"), "must be >= 1");
    if (!(o.pod_energy_tol > 0.0 && o.pod_energy_tol <= 1.0)) fail(join(path, "pod_energy_tol"), "must lie in (0, 1]");
  }

  if (doc.contains("parabolic")) {
    const auto& p = doc.at("parabolic");
    const std::string path = "parabolic";
    check_keys(p, path, {"final_time", "steps", "control", "initial"});
    ParabolicConfig pc;
    const bool graetz = c.problem == ProblemKind::kGraetz;
    pc.final_time = get_number(p, path, "final_time", graetz ? 7.0 : 1.28);
    pc.steps = static_cast<int>(get_integer(p, path, "steps", graetz ? 50 : 40));
    if (!(pc.final_time > 0.0)) fail(join(path, "final_time"), "must be positive");
    if (pc.steps < 1) fail(join(path, "steps"), "must be >= 1");
    if (p.contains("control")) pc.control = parse_scalar(p.at("control"), join(path, "control"));
    if (p.contains("initial")) {
      pc.initial = parse_scalar(p.at("initial"), join(path, "initial"));
      if (pc.initial->kind != "constant") fail(join(path, "initial.kind"), "only constant initial states are supported");
    }
    c.parabolic = pc;
  }

  if (doc.contains("evaluation")) {
    const auto& e = doc.at("evaluation");
    const std::string path = "evaluation";
    check_keys(e, path, {"test_size", "uniform_test_size", "modes", "seed", "threshold_component", "thresholds",
                         "nus", "n_mc", "mean_error_tolerance"});
    auto& o = c.evaluation;
    o.test_size = get_count(e, path, "test_size", o.test_size);
    o.uniform_test_size = get_count(e, path, "uniform_test_size", 0);
    if (e.contains("modes")) {
      const auto& m = e.at("modes");
      if (!m.is_array()) fail(join(path, "modes"), "expected an array of strings");
      o.modes.clear();
      for (std::size_t i = 0; i < m.size(); ++i) {
        const std::string mp = join(path, "modes") + "[" + std::to_string(i) + "]";
        if (!m[i].is_string()) fail(mp, "expected a string");
        const std::string mode = m[i].get<std::string>();
        if (mode != "beta" && mode != "uniform") fail(mp, "unknown mode '" + mode + "' (beta, uniform)");
        o.modes.push_back(mode);
      }
    }
    const bool samples = o.test_size > 0;
    if (samples && !e.contains("seed")) fail(join(path, "seed"), "required whenever test sets are sampled");
    const long long seed = get_integer(e, path, "seed", 0);
    if (seed < 0) fail(join(path, "seed"), "must be nonnegative");
    o.seed = static_cast<std::uint64_t>(seed);
    o.threshold_component = static_cast<int>(get_integer(e, path, "threshold_component", 0));
    if (o.threshold_component < 0 || o.threshold_component > 1) fail(join(path, "threshold_component"), "must be 0 or 1");
    o.thresholds = get_numbers(e, path, "thresholds");
    o.nus = get_numbers(e, path, "nus");
    for (std::size_t i = 0; i < o.nus.size(); ++i) {
      if (!(o.nus[i] >= 0.0 && o.nus[i] <= 1.0)) fail(join(path, "nus") + "[" + std::to_string(i) + "]", "must lie in [0, 1]");
    }
    o.n_mc = get_count(e, path, "n_mc", o.n_mc);
    if (e.contains("mean_error_tolerance")) o.mean_error_tolerance = get_number(e, path, "mean_error_tolerance");
  }

  c.output = get_string(doc, "", "output", c.output);
  if (c.problem == ProblemKind::kFrontSquare && c.mesh.nx % 4 != 0) fail("mesh.nx", "must be divisible by 4 for front_square");

  // The policy threshold must lie in the range of its component.
  if (c.stabilization.online.kind == "parameter_threshold") {
    const auto& law = c.distribution[c.stabilization.online.component];
    if (c.stabilization.online.threshold < law.lower() || c.stabilization.online.threshold > law.upper()) {
      fail("stabilization.online.threshold", "outside the range of the selected component");
    }
  }
  return c;
}

RunConfig load_config(const std::string& path, std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  if (seed_override) {
    if (!doc.is_object()) throw ConfigError(path + ": expected a JSON object");
    doc["greedy"]["seed"] = *seed_override;
    doc["evaluation"]["seed"] = *seed_override + 1;
  }
  return parse_config(doc);
}

std::string RunConfig::problem_name() const { return problem == ProblemKind::kGraetz ? "graetz" : "front_square"; }

std::string RunConfig::hash() const { return fnv1a_hex(canonical); }

stochastic::ParamDistribution RunConfig::make_distribution() const { return stochastic::ParamDistribution(distribution); }

problems::TruthProblem RunConfig::make_problem() const {
  const auto dist = make_distribution();
  ParameterBox box = domain ? *domain : dist.support();
  if (problem == ProblemKind::kGraetz) {
    problems::GraetzOptions o;
    o.nx = mesh.nx;
    o.ny = mesh.ny;
    o.domain = box;
    if (parabolic) {
      o.transient = true;
      o.final_time = parabolic->final_time;
      o.steps = parabolic->steps;
      if (parabolic->control) o.control = to_time_function(*parabolic->control);
      if (parabolic->initial) o.initial = [v = parabolic->initial->value](const fem::Point&) { return v; };
    }
    return problems::build_graetz(o);
  }
  problems::FrontSquareOptions o;
  o.nx = mesh.nx;
  o.ny = mesh.ny;
  o.delta = stabilization.delta;
  o.scale_by_diameter = stabilization.scale_by_diameter;
  o.domain = box;
  if (parabolic) {
    o.transient = true;
    o.final_time = parabolic->final_time;
    o.steps = parabolic->steps;
    if (parabolic->control) o.control = to_time_function(*parabolic->control);
    if (parabolic->initial) o.initial = [v = parabolic->initial->value](const fem::Point&) { return v; };
  }
  return problems::build_front_square(o);
}

selective::StabilizationPolicy RunConfig::make_policy(const stochastic::ParamDistribution& dist,
                                                      std::uint64_t seed) const {
  const auto& p = stabilization.online;
  selective::StabilizationPolicy policy;
  if (p.kind == "never") {
    policy = selective::StabilizationPolicy::never();
  } else if (p.kind == "parameter_threshold") {
    policy = selective::StabilizationPolicy::parameter_threshold(p.component, p.threshold);
  } else if (p.kind == "density_threshold") {
    policy = selective::StabilizationPolicy::density_threshold(
        p.nu, selective::density_threshold_from_nu(dist, p.nu, p.n_mc, seed));
  }
  policy.validate(dist);
  return policy;
}

json RunConfig::discretization() const {
  json d{{"problem", problem_name()}, {"nx", mesh.nx}, {"ny", mesh.ny}, {"parabolic", parabolic.has_value()}};
  if (problem == ProblemKind::kFrontSquare) {
    d["delta"] = stabilization.delta;
    d["scale_by_diameter"] = stabilization.scale_by_diameter;
  }
  if (parabolic) {
    d["final_time"] = parabolic->final_time;
    d["steps"] = parabolic->steps;
  }
  return d;
}

}  // namespace wrb::cli
