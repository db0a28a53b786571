#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wrb_cli/config.hpp"

namespace wrb::cli {

/// Which online blocks `online` uses: the config policy or a forced variant.
enum class OnlineVariant { kPolicy, kStabilized, kPlain };

/// Greedy (steady) or POD-Greedy (parabolic) offline stage. Writes space.wrbs,
/// trace.csv and summary.json into `out_dir`; returns the summary.
nlohmann::json cmd_offline(const RunConfig& config, const std::string& out_dir);

/// Reduced solves at the given parameters. Writes online.csv and one field
/// dump per parameter (plus a probe trajectory for parabolic runs).
nlohmann::json cmd_online(const RunConfig& config, const std::string& space_path, const std::vector<Parameter>& mus,
                          const std::string& out_dir, OnlineVariant variant = OnlineVariant::kPolicy);

/// Truth-vs-reduced errors on sampled test sets for one or more spaces (one
/// labeled series each). Writes errors.csv and summary.json.
nlohmann::json cmd_evaluate(const RunConfig& config, const std::vector<std::string>& space_paths,
                            const std::string& out_dir);

/// Mean error and unstabilized percentage over the configured parameter
/// thresholds. Writes sweep_threshold.csv and summary.json.
nlohmann::json cmd_sweep_threshold(const RunConfig& config, const std::string& space_path, const std::string& out_dir);

/// Same over density tail masses ν; optionally tunes ν against a mean-error
/// tolerance. Writes sweep_density.csv and summary.json.
nlohmann::json cmd_sweep_density(const RunConfig& config, const std::string& space_path, const std::string& out_dir);

/// "a,b" or "a b".
Parameter parse_parameter(const std::string& text);
/// One parameter per line; blank lines and lines starting with '#' are skipped.
std::vector<Parameter> read_parameter_file(const std::string& path);

}  // namespace wrb::cli
