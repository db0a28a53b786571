#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wrb/problems/problem.hpp"
#include "wrb/selective/policy.hpp"
#include "wrb/stochastic/distribution.hpp"

namespace wrb::cli {

/// Thrown for malformed configs; the message starts with the offending field path.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

enum class ProblemKind { kGraetz, kFrontSquare };

struct MeshConfig {
  int nx = 0;
  int ny = 0;
};

struct OnlinePolicyConfig {
  std::string kind = "always";  // always | never | parameter_threshold | density_threshold
  int component = 0;
  double threshold = 0.0;
  double nu = 0.0;
  std::size_t n_mc = 100000;
};

struct StabilizationConfig {
  double delta = 1.0;
  bool scale_by_diameter = false;
  bool offline = true;
  OnlinePolicyConfig online;
};

struct GreedyConfig {
  double tolerance = 1e-6;
  int max_basis = 20;
  std::size_t training_size = 200;
  bool weighted = false;
  std::uint64_t seed = 1;
  bool trace_true_error = false;
  int modes_per_iteration = 2;
  double pod_energy_tol = 1.0 - 1e-7;
};

struct ScalarSpec {
  std::string kind;  // constant | cosine
  double value = 0.0;
  double amplitude = 1.0;
  double frequency = 1.0;
};

struct ParabolicConfig {
  double final_time = 0.0;
  int steps = 0;
  std::optional<ScalarSpec> control;
  std::optional<ScalarSpec> initial;
};

struct EvaluationConfig {
  std::size_t test_size = 100;
  std::size_t uniform_test_size = 0;  // 0: same as test_size
  std::vector<std::string> modes{"beta"};
  std::uint64_t seed = 2;
  int threshold_component = 0;
  std::vector<double> thresholds;
  std::vector<double> nus;
  std::size_t n_mc = 100000;
  std::optional<double> mean_error_tolerance;
};

struct RunConfig {
  ProblemKind problem = ProblemKind::kGraetz;
  MeshConfig mesh;
  std::optional<ParameterBox> domain;
  StabilizationConfig stabilization;
  std::vector<stochastic::ComponentLaw> distribution;
  GreedyConfig greedy;
  std::optional<ParabolicConfig> parabolic;
  EvaluationConfig evaluation;
  std::string output = "run";
  /// Canonical dump of the parsed document, hashed for provenance.
  std::string canonical;

  [[nodiscard]] std::string problem_name() const;
  [[nodiscard]] std::string hash() const;
  [[nodiscard]] stochastic::ParamDistribution make_distribution() const;
  [[nodiscard]] problems::TruthProblem make_problem() const;
  [[nodiscard]] selective::StabilizationPolicy make_policy(const stochastic::ParamDistribution& dist,
                                                           std::uint64_t seed) const;
  /// Identity of the discretization, stored in persisted spaces.
  [[nodiscard]] nlohmann::json discretization() const;
};

RunConfig parse_config(const nlohmann::json& doc);
/// Reads a JSON config; a seed override replaces greedy.seed and sets
/// evaluation.seed to seed + 1 before hashing.
RunConfig load_config(const std::string& path, std::optional<std::uint64_t> seed_override = std::nullopt);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace wrb::cli
