#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "mcl/cli/config.hpp"
#include "mcl/cli/run.hpp"

namespace {

int config_failure(const mcl::cli::ConfigError& e) {
  std::cerr << fmt::format("config error [{}]: {}\n", mcl::cli::to_string(e.kind()), e.what());
  return mcl::cli::kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-volume solvers for conservation laws on curved spacetimes"};
  app.require_subcommand(1);

  std::string run_config;
  std::optional<std::string> out_dir;
  auto* run = app.add_subcommand("run", "Run the solver described by a config file");
  run->add_option("--config", run_config, "INI configuration file")->required();
  run->add_option("--out", out_dir, "Output directory (overrides MCL_OUTPUT_DIR and the config)");

  std::string validate_config;
  auto* validate = app.add_subcommand("validate", "Parse and validate a config file");
  validate->add_option("--config", validate_config, "INI configuration file")->required();

  auto* schemas = app.add_subcommand("schemas", "Print the CSV output schemas");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : mcl::cli::kExitConfig;
  }

  if (schemas->parsed()) {
    std::cout << mcl::cli::describe_schemas();
    return mcl::cli::kExitOk;
  }

  try {
    if (validate->parsed()) {
      const auto cfg = mcl::cli::parse_config(validate_config);
      std::cout << mcl::cli::to_json(cfg).dump(2) << '\n';
      return mcl::cli::kExitOk;
    }
    const auto cfg = mcl::cli::parse_config(run_config);
    const auto dir = mcl::cli::resolve_output_dir(out_dir, cfg);
    const auto outcome = mcl::cli::run(cfg, dir);
    if (outcome.exit_code != mcl::cli::kExitOk)
      std::cerr << fmt::format("numerical failure: {}\n", outcome.summary.value("error", std::string{}));
    else
      std::cout << fmt::format("wrote {}\n", (dir / "summary.json").string());
    return outcome.exit_code;
  } catch (const mcl::cli::ConfigError& e) {
    return config_failure(e);
  } catch (const std::exception& e) {
    std::cerr << fmt::format("error: {}\n", e.what());
    return 1;
  }
}
