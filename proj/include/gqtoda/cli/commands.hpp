#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gqtoda/cli/config.hpp"

namespace gqtoda::cli {

enum ExitCode { kPass = 0, kToleranceFailure = 1, kConfigError = 2, kNumericError = 3 };

struct CommandResult {
  int exit_code = kPass;
  std::string summary;
  std::vector<std::filesystem::path> files;
};

/// V(x, t) over the window plus a `.meta` file (resolved config and derived constants).
CommandResult cmd_soliton(const RunConfig& cfg, const std::filesystem::path& out);
/// Bilinear and field-equation residuals over the window.
CommandResult cmd_residual(const RunConfig& cfg, const std::filesystem::path& out);
/// Lattice integration against the analytic soliton.
CommandResult cmd_simulate(const RunConfig& cfg, const std::filesystem::path& out);
/// Hierarchy identity table on random smooth fields.
CommandResult cmd_hierarchy(const RunConfig& cfg, const std::filesystem::path& out);
/// gnuplot data and script stubs for the three figure parameter sets.
CommandResult cmd_figures(const RunConfig& cfg, const std::filesystem::path& out);

/// Maps an exception from a command to an exit code.
int exit_code_for(const std::exception& e);

/// Full command line front end; returns the exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace gqtoda::cli
