#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "swkb/cli/config.hpp"

namespace swkb::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitValidation = 4,
};

struct CommandResult {
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> files;
  std::string summary;
};

/// Columns n, E_wkb_half, E_wkb_old, E_oracle, rel_err_half, rel_err_old.
CommandResult cmd_spectrum(const RunConfig& config);
/// Columns x, re_psi_wkb, im_psi_wkb, psi_oracle, region, validity_metric.
CommandResult cmd_wavefunction(const RunConfig& config);
/// Columns alpha, deviation, re_deviation, im_deviation, clamped.
CommandResult cmd_sweep_alpha(const RunConfig& config);
/// JSON report of every check in the selected suite.
CommandResult cmd_validate(const RunConfig& config);

/// Dispatches by command name (spectrum, wavefunction, sweep-alpha, validate).
CommandResult run_command(const std::string& command, const RunConfig& config);

/// Shortest decimal that round-trips; "nan", "inf", "-inf" otherwise.
std::string format_number(double value);

inline constexpr const char* kToolVersion = SWKB_VERSION;

}  // namespace swkb::cli
