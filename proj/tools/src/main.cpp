#include <CLI11.hpp>
#include <iostream>

#include "wrb_cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"wrb: stabilized weighted reduced-basis runs"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> spaces;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> mus;
  std::string mu_file;
  std::string variant = "policy";

  auto common = [&](CLI::App* cmd, bool needs_space) {
    cmd->add_option("--config", config_path, "JSON run config")->required()->check(CLI::ExistingFile);
    if (needs_space) cmd->add_option("--space", spaces, "space container from `offline`")->required();
    cmd->add_option("--seed", seed, "overrides greedy.seed (evaluation.seed becomes seed + 1)");
    cmd->add_option("--out", out_dir, "output directory (default: config output)");
  };
  auto* offline = app.add_subcommand("offline", "run the (POD-)greedy offline stage");
  common(offline, false);
  auto* online = app.add_subcommand("online", "reduced solves at given parameters");
  common(online, true);
  online->add_option("--mu", mus, "parameter, e.g. 63095.7,3.3 (repeatable)");
  online->add_option("--mu-file", mu_file, "file with one parameter per line")->check(CLI::ExistingFile);
  online->add_option("--variant", variant, "policy | stabilized | plain")
      ->check(CLI::IsMember({"policy", "stabilized", "plain"}));
  auto* evaluate = app.add_subcommand("evaluate", "truth-vs-reduced errors on sampled test sets");
  common(evaluate, true);
  auto* sweep_t = app.add_subcommand("sweep-threshold", "selective stabilization over parameter thresholds");
  common(sweep_t, true);
  auto* sweep_d = app.add_subcommand("sweep-density", "selective stabilization over density tail masses");
  common(sweep_d, true);

  CLI11_PARSE(app, argc, argv);

  try {
    const wrb::cli::RunConfig config = wrb::cli::load_config(config_path, seed);
    const std::string dir = out_dir.empty() ? config.output : out_dir;
    nlohmann::json summary;
    if (offline->parsed()) {
      summary = wrb::cli::cmd_offline(config, dir);
    } else if (online->parsed()) {
      std::vector<wrb::Parameter> params;
      for (const auto& m : mus) params.push_back(wrb::cli::parse_parameter(m));
      if (!mu_file.empty()) {
        const auto more = wrb::cli::read_parameter_file(mu_file);
        params.insert(params.end(), more.begin(), more.end());
      }
      if (params.empty()) throw wrb::InvalidArgument("online: give --mu or --mu-file");
      const auto v = variant == "stabilized" ? wrb::cli::OnlineVariant::kStabilized
                     : variant == "plain"    ? wrb::cli::OnlineVariant::kPlain
                                             : wrb::cli::OnlineVariant::kPolicy;
      summary = wrb::cli::cmd_online(config, spaces.front(), params, dir, v);
    } else if (evaluate->parsed()) {
      summary = wrb::cli::cmd_evaluate(config, spaces, dir);
    } else if (sweep_t->parsed()) {
      summary = wrb::cli::cmd_sweep_threshold(config, spaces.front(), dir);
    } else {
      summary = wrb::cli::cmd_sweep_density(config, spaces.front(), dir);
    }
    std::cout << summary.dump(2) << '\n';
  } catch (const wrb::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
