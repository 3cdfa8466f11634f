#include "swkb/cli/commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "swkb/checks.hpp"
#include "swkb/classical_limit.hpp"
#include "swkb/errors.hpp"
#include "swkb/oracle.hpp"
#include "swkb/quantization.hpp"
#include "swkb/wavefunction.hpp"

namespace swkb::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Output files are assembled in memory and written together at the end.
class OutputSet {
 public:
  explicit OutputSet(const RunConfig& config) : dir_(config.output.dir) {}

  void add(const std::string& name, std::string content) { files_.emplace_back(name, std::move(content)); }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& f : files_) out.push_back(f.first);
    return out;
  }

  std::vector<fs::path> write() const {
    fs::create_directories(dir_);
    std::vector<fs::path> written;
    for (const auto& [name, content] : files_) {
      const fs::path path = dir_ / name;
      std::ofstream out(path, std::ios::binary);
      out << content;
      if (!out) throw std::runtime_error("cannot write " + path.string());
      written.push_back(path);
    }
    return written;
  }

 private:
  fs::path dir_;
  std::vector<std::pair<std::string, std::string>> files_;
};

bool want_csv(const RunConfig& c) { return c.output.format != "json"; }
bool want_json(const RunConfig& c) { return c.output.format != "csv"; }

class CsvTable {
 public:
  CsvTable(const std::string& command, const std::string& hash, const std::vector<std::string>& columns) {
    out_ << "# swkb " << kToolVersion << ' ' << command << '\n';
    out_ << "# config_sha256 " << hash << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
  }

  CsvTable& cell(double v) { return text(format_number(v)); }
  CsvTable& cell(int v) { return text(std::to_string(v)); }
  CsvTable& text(const std::string& s) {
    out_ << (first_ ? "" : ",") << s;
    first_ = false;
    return *this;
  }
  void end_row() {
    out_ << '\n';
    first_ = true;
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
  bool first_ = true;
};

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json tolerances(const RunConfig& c) {
  return {
      {"quantization_action_relative", 1e-12},
      {"quantization_root_relative", 1e-13},
      {"phase_integral_relative", 1e-10},
      {"phase_integral_absolute", 1e-12},
      {"turning_point_scan_points", kTurningPointScan},
      {"oracle_match_relative", 1e-14},
      {"oracle_tail_exponent", kTailExponent},
      {"oracle_points",
       {{"spectrum", c.spectrum.oracle_points},
        {"wavefunction", c.wavefunction.oracle_points},
        {"validate", c.validate.oracle_points}}},
      {"deviation_floor", kDeviationFloor},
  };
}

CommandResult finish(const std::string& command, const RunConfig& config, OutputSet& outputs, json results,
                     int exit_code, std::string summary) {
  const std::string manifest_name = (command == "sweep-alpha" ? std::string("sweep") : command) + "_manifest.json";
  json manifest{
      {"manifest_version", 1},
      {"tool", "swkb"},
      {"version", kToolVersion},
      {"command", command},
      {"config", to_json(config)},
      {"config_sha256", config_hash(config)},
      {"tolerances", tolerances(config)},
      {"results", std::move(results)},
  };
  std::vector<std::string> names = outputs.names();
  names.push_back(manifest_name);
  manifest["files"] = names;
  outputs.add(manifest_name, dump(manifest));
  return {exit_code, outputs.write(), std::move(summary)};
}

json failure(int n, const std::string& stage, const std::exception& e) {
  return {{"n", n}, {"stage", stage}, {"message", e.what()}};
}

double relative_error(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, result.ptr);
}

CommandResult cmd_spectrum(const RunConfig& config) {
  const Potential pot = build_potential(config);
  const ScreeningParams params = build_params(config);
  const std::string hash = config_hash(config);
  const QuantizationRule half = QuantizationRule::connection();
  const QuantizationRule old = QuantizationRule::old_quantum();

  struct Row {
    int n;
    double half, old, oracle;
  };
  std::vector<Row> rows;
  json failures = json::array();
  std::optional<double> hint_half;
  std::optional<double> hint_old;
  for (int n = 0; n <= config.spectrum.n_max; ++n) {
    Row row{n, kNaN, kNaN, kNaN};
    try {
      row.half = quantize_level(pot, n, params, half, hint_half).energy;
      hint_half = row.half;
    } catch (const Error& e) {
      failures.push_back(failure(n, "wkb_half", e));
    }
    if (n + effective_offset(old, pot) > 0.0) {
      try {
        row.old = quantize_level(pot, n, params, old, hint_old).energy;
        hint_old = row.old;
      } catch (const Error& e) {
        failures.push_back(failure(n, "wkb_old", e));
      }
    }
    try {
      const double e_ref = std::isfinite(row.half) ? row.half : row.old;
      const Grid grid = std::isfinite(e_ref)
                            ? oracle_grid(pot, params, e_ref, config.spectrum.oracle_points)
                            : Grid{pot.domain().lo, pot.domain().hi, config.spectrum.oracle_points};
      row.oracle = refined_eigenvalue(pot, n, params, grid).energy;
    } catch (const Error& e) {
      failures.push_back(failure(n, "oracle", e));
    }
    rows.push_back(row);
  }

  OutputSet outputs(config);
  if (want_csv(config)) {
    CsvTable csv("spectrum", hash, {"n", "E_wkb_half", "E_wkb_old", "E_oracle", "rel_err_half", "rel_err_old"});
    for (const Row& r : rows) {
      csv.cell(r.n).cell(r.half).cell(r.old).cell(r.oracle);
      csv.cell(relative_error(r.half, r.oracle)).cell(relative_error(r.old, r.oracle)).end_row();
    }
    outputs.add("spectrum.csv", csv.str());
  }
  if (want_json(config)) {
    json levels = json::array();
    for (const Row& r : rows) {
      levels.push_back({{"n", r.n},
                        {"E_wkb", number_or_null(config.spectrum.rule == "old" ? r.old : r.half)},
                        {"E_wkb_half", number_or_null(r.half)},
                        {"E_wkb_old", number_or_null(r.old)},
                        {"E_oracle", number_or_null(r.oracle)},
                        {"rel_err_half", number_or_null(relative_error(r.half, r.oracle))},
                        {"rel_err_old", number_or_null(relative_error(r.old, r.oracle))}});
    }
    outputs.add("spectrum.json", dump({{"config_sha256", hash}, {"rule", config.spectrum.rule}, {"levels", levels}}));
  }
  const bool ok = failures.empty();
  json results{{"levels", rows.size()},
               {"maslov_offset_half", effective_offset(half, pot)},
               {"failures", failures}};
  return finish("spectrum", config, outputs, std::move(results), ok ? kExitOk : kExitNumerical,
                std::to_string(rows.size()) + " levels, " + std::to_string(failures.size()) + " failures");
}

CommandResult cmd_wavefunction(const RunConfig& config) {
  const Potential pot = build_potential(config);
  const ScreeningParams params = build_params(config);
  const std::string hash = config_hash(config);
  const int n = config.wavefunction.n;

  const double energy = quantize(pot, n, params, QuantizationRule::connection());
  const Grid grid = oracle_grid(pot, params, energy, config.wavefunction.oracle_points);
  const SolverReport oracle = eigenvalue_solve(pot, n, params, grid);
  const auto wf = WkbWavefunction::bound_state(pot, energy, params);
  const LocalMomentum& lm = wf.momentum();
  const int stride = (grid.points - 1) / (config.wavefunction.samples - 1);

  struct Sample {
    double x;
    Complex wkb;
    double oracle;
    RegionKind region;
    double metric;
  };
  std::vector<Sample> samples;
  double alignment = 0.0;
  for (int i = 0; i < grid.points; i += stride) {
    const double x = grid.x(i);
    const Complex psi = evaluate_with_uniform(wf, x);
    const double p2 = std::abs(lm.p_squared(x));
    const double metric = effective_hbar(params) * params.mass_total() * std::abs(pot.slope(x)) / (p2 * std::sqrt(p2));
    samples.push_back({x, psi, oracle.psi[i], wf.region_at(x).kind, metric});
    alignment += oracle.psi[i] * psi.real();
  }
  // The oracle fixes its own overall sign; report it in the WKB orientation.
  if (alignment < 0.0) {
    for (Sample& s : samples) s.oracle = -s.oracle;
  }

  OutputSet outputs(config);
  if (want_csv(config)) {
    CsvTable csv("wavefunction", hash, {"x", "re_psi_wkb", "im_psi_wkb", "psi_oracle", "region", "validity_metric"});
    for (const Sample& s : samples) {
      csv.cell(s.x).cell(s.wkb.real()).cell(s.wkb.imag()).cell(s.oracle);
      csv.text(std::string(to_string(s.region))).cell(s.metric).end_row();
    }
    outputs.add("wavefunction.csv", csv.str());
  }
  json regions = json::array();
  for (const Region& r : wf.regions()) {
    regions.push_back({{"kind", to_string(r.kind)}, {"lo", r.lo}, {"hi", r.hi}});
  }
  if (want_json(config)) {
    json xs = json::array(), re = json::array(), im = json::array(), ps = json::array();
    for (const Sample& s : samples) {
      xs.push_back(s.x);
      re.push_back(s.wkb.real());
      im.push_back(s.wkb.imag());
      ps.push_back(s.oracle);
    }
    outputs.add("wavefunction.json", dump({{"config_sha256", hash},
                                           {"n", n},
                                           {"E_wkb", energy},
                                           {"E_oracle", oracle.energy},
                                           {"regions", regions},
                                           {"x", xs},
                                           {"re_psi_wkb", re},
                                           {"im_psi_wkb", im},
                                           {"psi_oracle", ps}}));
  }
  json results{{"n", n},
               {"E_wkb", energy},
               {"E_oracle", oracle.energy},
               {"samples", samples.size()},
               {"regions", regions},
               {"discarded_growth", wf.discarded_growth()}};
  return finish("wavefunction", config, outputs, std::move(results), kExitOk,
                std::to_string(samples.size()) + " samples of level " + std::to_string(n));
}

CommandResult cmd_sweep_alpha(const RunConfig& config) {
  const Potential pot = build_potential(config);
  const ScreeningParams params = build_params(config);
  const std::string hash = config_hash(config);
  const auto& sw = config.sweep;
  const LimitScan scan = convergence_scan(pot, sw.energy, params, sw.x_from, sw.x_to, sw.alphas);

  OutputSet outputs(config);
  if (want_csv(config)) {
    CsvTable csv("sweep-alpha", hash, {"alpha", "deviation", "re_deviation", "im_deviation", "clamped"});
    for (std::size_t i = 0; i < scan.alphas.size(); ++i) {
      csv.cell(scan.alphas[i]).cell(scan.deviations[i]).cell(scan.re_deviations[i]).cell(scan.im_deviations[i]);
      csv.cell(scan.clamped[i] ? 1 : 0).end_row();
    }
    outputs.add("sweep.csv", csv.str());
  }
  const int clamped = static_cast<int>(std::count(scan.clamped.begin(), scan.clamped.end(), true));
  json summary{{"config_sha256", hash},
               {"slope_status", scan.slope_computed ? "computed" : "not-computed"},
               {"fitted_slope", number_or_null(scan.fitted_slope)},
               {"intercept", number_or_null(scan.intercept)},
               {"interval", {scan.x_from, scan.x_to}},
               {"energy", scan.energy},
               {"points", scan.alphas.size()},
               {"clamped", clamped}};
  outputs.add("sweep.json", dump(summary));

  json failures = json::array();
  if (sw.spectra_n_max >= 0) {
    const QuantizationRule rule = QuantizationRule::from_name(config.spectrum.rule);
    CsvTable csv("sweep-alpha", hash, {"alpha", "n", "E_wkb"});
    for (double alpha : sw.alphas) {
      const EnergySpectrum s = spectrum(pot, sw.spectra_n_max, params.with_alpha(alpha), rule);
      for (const auto& level : s.levels) csv.cell(alpha).cell(level.n).cell(level.energy).end_row();
      for (const auto& f : s.failures) {
        failures.push_back({{"alpha", alpha}, {"n", f.n}, {"message", f.message}});
      }
    }
    outputs.add("sweep_spectra.csv", csv.str());
  }
  json results = summary;
  results.erase("config_sha256");
  results["failures"] = failures;
  std::string text = scan.slope_computed ? "slope " + format_number(scan.fitted_slope) : "slope not computed";
  return finish("sweep-alpha", config, outputs, std::move(results), failures.empty() ? kExitOk : kExitNumerical,
                std::move(text));
}

CommandResult cmd_validate(const RunConfig& config) {
  const std::string hash = config_hash(config);
  const auto results = checks::run_suite(config.validate.suite,
                                         {config.validate.seed, config.validate.oracle_points});
  int failed = 0;
  json list = json::array();
  for (const auto& c : results) {
    if (!c.pass) ++failed;
    list.push_back({{"name", c.name},
                    {"suite", c.suite},
                    {"criterion", c.criterion},
                    {"measured", number_or_null(c.measured)},
                    {"bound", c.bound},
                    {"pass", c.pass},
                    {"note", c.note}});
  }
  OutputSet outputs(config);
  json report{{"config_sha256", hash},
              {"suite", config.validate.suite},
              {"seed", config.validate.seed},
              {"passed", results.size() - failed},
              {"failed", failed},
              {"checks", list}};
  outputs.add("validate_report.json", dump(report));
  if (want_csv(config)) {
    CsvTable csv("validate", hash, {"suite", "criterion", "name", "measured", "bound", "pass"});
    for (const auto& c : results) {
      csv.text(c.suite).cell(c.criterion).text('"' + c.name + '"').cell(c.measured).cell(c.bound);
      csv.cell(c.pass ? 1 : 0).end_row();
    }
    outputs.add("validate_report.csv", csv.str());
  }
  json summary{{"passed", results.size() - failed}, {"failed", failed}};
  return finish("validate", config, outputs, std::move(summary), failed == 0 ? kExitOk : kExitValidation,
                std::to_string(results.size() - failed) + "/" + std::to_string(results.size()) + " checks passed");
}

CommandResult run_command(const std::string& command, const RunConfig& config) {
  if (command == "spectrum") return cmd_spectrum(config);
  if (command == "wavefunction") return cmd_wavefunction(config);
  if (command == "sweep-alpha") return cmd_sweep_alpha(config);
  if (command == "validate") return cmd_validate(config);
  throw ConfigError("unknown command '" + command + "'");
}

}  // namespace swkb::cli
