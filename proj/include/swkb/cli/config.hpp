#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "swkb/params.hpp"
#include "swkb/potentials.hpp"

namespace swkb::cli {

/// Malformed or inconsistent configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PotentialConfig {
  std::string kind = "harmonic";
  double omega = 1.0;
  double center = 0.0;
  double force = 1.0;
  bool hard_wall = true;
  double lambda = 1.0;
  double depth = 10.0;
  double width = 1.0;
  Domain domain{-15.0, 15.0};
  std::vector<double> x;  // tabulated samples
  std::vector<double> v;
};

struct ParamsConfig {
  double alpha = 1.0;
  double mass = 1.0;
  double hbar = 1.0;
};

struct SpectrumConfig {
  int n_max = 5;  // -1 selects an empty run
  std::string rule = "half";
  int oracle_points = 8001;
};

struct WavefunctionConfig {
  int n = 10;
  int samples = 801;  // taken every (oracle_points - 1) / (samples - 1) oracle nodes
  int oracle_points = 8001;
};

struct SweepConfig {
  std::vector<double> alphas;  // defaults to 7 values log-spaced over [1e-3, 1e-1]
  double x_from = 0.1;
  double x_to = 0.6;
  double energy = 1.0;
  int spectra_n_max = -1;  // >= 0 adds per-alpha spectra
};

struct ValidateConfig {
  std::string suite = "all";
  std::uint64_t seed = 42;
  int oracle_points = 8001;
};

struct OutputConfig {
  std::string dir = "swkb_out";
  std::string format = "both";  // csv | json | both
};

struct RunConfig {
  PotentialConfig potential;
  ParamsConfig params;
  SpectrumConfig spectrum;
  WavefunctionConfig wavefunction;
  SweepConfig sweep;
  ValidateConfig validate;
  OutputConfig output;
};

RunConfig default_config();

/// Parses a config document, or the "config" member of a run manifest.
/// Missing fields take defaults; unknown keys and bad values throw
/// ConfigError. Relative tabulated-potential file paths resolve against
/// base_dir and the samples are inlined.
RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Throws ConfigError unless every field is in range and the potential builds.
void validate(const RunConfig& config);

struct Overrides {
  std::optional<std::string> out;
  std::optional<double> alpha;
  std::optional<std::string> rule;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
};
void apply_overrides(RunConfig& config, const Overrides& overrides);

/// Full normalized config, every field present.
nlohmann::json to_json(const RunConfig& config);
/// SHA-256 (hex) of the normalized config without the output block.
std::string config_hash(const RunConfig& config);

Potential build_potential(const RunConfig& config);
ScreeningParams build_params(const RunConfig& config);

}  // namespace swkb::cli
