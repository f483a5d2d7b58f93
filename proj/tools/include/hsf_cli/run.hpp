#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "hsf_cli/config.hpp"

namespace hsf::cli {

struct RunOutput {
  std::string csv;
  nlohmann::json summary;
};

/// Runs one command in memory. Throws ConfigError / DomainError for bad
/// input and InvariantError for numeric failures.
RunOutput execute(const RunConfig& config);

/// CSV path of a run; the summary goes next to it with extension .json.
std::filesystem::path output_path(const RunConfig& config);

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericError = 3 };

/// Validates, executes, writes both files atomically and prints the summary
/// to `out`. Diagnostics go to `err`, one line each.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace hsf::cli
