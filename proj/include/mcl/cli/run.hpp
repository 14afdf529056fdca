#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mcl/cli/config.hpp"

namespace mcl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Output file pattern and its header columns.
struct CsvSchema {
  std::string_view file;
  std::vector<std::string_view> columns;
};

/// Every CSV the tool writes. field_<step>.csv has an extra y column on the
/// torus (see field_columns).
const std::vector<CsvSchema>& csv_schemas();
std::vector<std::string_view> field_columns(bool two_dimensional);

/// Human-readable listing printed by `schemas`.
std::string describe_schemas();

/// --out beats the MCL_OUTPUT_DIR environment variable, which beats the
/// config value.
std::filesystem::path resolve_output_dir(const std::optional<std::string>& cli_out, const RunConfig& cfg);

struct RunOutcome {
  int exit_code = kExitOk;
  nlohmann::json summary;
};

/// Runs the configured solver, writes CSVs and summary.json into out_dir and
/// returns the summary. Numerical failures give kExitNumerical with the error
/// recorded; a detected Gowdy blow-up is a normal result.
RunOutcome run(const RunConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace mcl::cli
