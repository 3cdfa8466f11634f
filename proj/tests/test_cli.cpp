#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "swkb/cli/commands.hpp"
#include "swkb/cli/config.hpp"

using namespace swkb::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "swkb_cli_tests" / name;
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Csv {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  double number(std::size_t row, const std::string& column) const {
    const auto it = std::find(header.begin(), header.end(), column);
    REQUIRE(it != header.end());
    return std::stod(rows.at(row).at(static_cast<std::size_t>(it - header.begin())));
  }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream s(line);
  std::string cell;
  while (std::getline(s, cell, ',')) out.push_back(cell);
  return out;
}

Csv read_csv(const fs::path& path) {
  Csv csv;
  std::istringstream in(slurp(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.starts_with('#')) {
      csv.comments.push_back(line);
    } else if (csv.header.empty()) {
      csv.header = split(line);
    } else {
      csv.rows.push_back(split(line));
    }
  }
  return csv;
}

RunConfig config_from(const json& doc, const fs::path& out) {
  RunConfig c = parse_config(doc);
  c.output.dir = out.string();
  return c;
}

}  // namespace

TEST_CASE("defaults and normalized json round trip") {
  const RunConfig c = default_config();
  CHECK(c.potential.kind == "harmonic");
  CHECK(c.sweep.alphas.size() == 7);
  CHECK(c.validate.seed == 42);
  const RunConfig back = parse_config(to_json(c));
  CHECK(to_json(back) == to_json(c));
  CHECK(config_hash(back) == config_hash(c));
  CHECK(config_hash(c).size() == 64);
}

TEST_CASE("bad configs are rejected") {
  CHECK_THROWS_AS(parse_config(json{{"bogus", 1}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"params", {{"alpha", 1.5}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"params", {{"alpha", "big"}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"potential", {{"kind", "harmonic"}, {"force", 1.0}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"potential", {{"kind", "cubic"}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"spectrum", {{"rule", "third"}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"output", {{"format", "xml"}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"wavefunction", {{"samples", 7}}}}), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("overrides") {
  RunConfig c = default_config();
  Overrides o;
  o.alpha = 0.25;
  o.rule = "old";
  o.seed = 7;
  o.out = "elsewhere";
  apply_overrides(c, o);
  CHECK(c.params.alpha == 0.25);
  CHECK(c.spectrum.rule == "old");
  CHECK(c.validate.seed == 7);
  CHECK(c.output.dir == "elsewhere");
  Overrides bad;
  bad.alpha = 1.5;
  CHECK_THROWS_AS(apply_overrides(c, bad), ConfigError);
}

TEST_CASE("hash ignores the output block only") {
  RunConfig a = default_config();
  RunConfig b = a;
  b.output.dir = "other";
  b.output.format = "csv";
  CHECK(config_hash(a) == config_hash(b));
  b.params.alpha = 0.5;
  CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("tabulated potential file is inlined") {
  const json doc{{"potential", {{"kind", "tabulated"}, {"file", "anharmonic.csv"}}}};
  const RunConfig t = parse_config(doc, SWKB_TEST_DATA);
  CHECK(t.potential.x.size() == 241);
  CHECK(t.potential.domain.lo == -6.0);
  const auto pot = build_potential(t);
  CHECK(pot.is_tabulated());
  CHECK_FALSE(to_json(t)["potential"].contains("file"));
}

TEST_CASE("spectrum command") {
  const fs::path out = scratch("spectrum");
  const RunConfig c = config_from(json{{"spectrum", {{"n_max", 5}}}}, out);
  const CommandResult r = cmd_spectrum(c);
  CHECK(r.exit_code == kExitOk);
  const Csv csv = read_csv(out / "spectrum.csv");
  REQUIRE(csv.rows.size() == 6);
  CHECK(csv.comments.size() == 2);
  CHECK(csv.comments[1] == "# config_sha256 " + config_hash(c));
  CHECK(csv.header == std::vector<std::string>{"n", "E_wkb_half", "E_wkb_old", "E_oracle", "rel_err_half", "rel_err_old"});
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    CHECK(csv.number(i, "rel_err_half") <= 1e-8);
    CHECK(csv.number(i, "E_wkb_half") == doctest::Approx(i + 0.5).epsilon(1e-10));
  }
  CHECK(csv.rows[0][2] == "nan");

  const fs::path out2 = scratch("spectrum_alpha");
  RunConfig c2 = c;
  c2.params.alpha = 0.1;
  c2.output.dir = out2.string();
  REQUIRE(cmd_spectrum(c2).exit_code == kExitOk);
  const Csv scaled = read_csv(out2 / "spectrum.csv");
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    CHECK(scaled.number(i, "E_wkb_half") == doctest::Approx(0.1 * csv.number(i, "E_wkb_half")).epsilon(1e-9));
    CHECK(scaled.number(i, "E_oracle") == doctest::Approx(0.1 * csv.number(i, "E_oracle")).epsilon(1e-8));
  }

  const json manifest = json::parse(slurp(out / "spectrum_manifest.json"));
  CHECK(manifest["config_sha256"] == config_hash(c));
  CHECK(manifest.contains("tolerances"));
  CHECK(config_hash(parse_config(manifest)) == config_hash(c));
}

TEST_CASE("empty spectrum") {
  const fs::path out = scratch("empty");
  const CommandResult r = cmd_spectrum(config_from(json{{"spectrum", {{"n_max", -1}}}}, out));
  CHECK(r.exit_code == kExitOk);
  const Csv csv = read_csv(out / "spectrum.csv");
  CHECK(csv.header.size() == 6);
  CHECK(csv.rows.empty());
}

TEST_CASE("wavefunction command") {
  const fs::path out = scratch("wavefunction");
  const RunConfig c = config_from(json{{"wavefunction", {{"n", 4}, {"samples", 401}}}}, out);
  REQUIRE(cmd_wavefunction(c).exit_code == kExitOk);
  const Csv csv = read_csv(out / "wavefunction.csv");
  REQUIRE(csv.rows.size() == 401);
  const auto region_col = static_cast<std::size_t>(
      std::find(csv.header.begin(), csv.header.end(), "region") - csv.header.begin());
  REQUIRE(region_col < csv.header.size());
  std::vector<std::string> runs;
  for (const auto& row : csv.rows) {
    if (runs.empty() || runs.back() != row[region_col]) runs.push_back(row[region_col]);
  }
  CHECK(runs == std::vector<std::string>{"forbidden", "connection", "allowed", "connection", "forbidden"});

  // Right tail decays monotonically.
  double prev = INFINITY;
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    if (csv.rows[i][region_col] != "forbidden" || csv.number(i, "x") < 0.0) continue;
    const double v = std::abs(csv.number(i, "re_psi_wkb"));
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("sweep command") {
  const fs::path out = scratch("sweep");
  REQUIRE(cmd_sweep_alpha(config_from(json::object(), out)).exit_code == kExitOk);
  const json summary = json::parse(slurp(out / "sweep.json"));
  CHECK(summary["slope_status"] == "computed");
  CHECK(summary["fitted_slope"].get<double>() == doctest::Approx(1.0).epsilon(0.05));
  CHECK(read_csv(out / "sweep.csv").rows.size() == 7);

  const fs::path sym = scratch("sweep_sym");
  REQUIRE(cmd_sweep_alpha(config_from(json{{"sweep", {{"interval", {-0.6, 0.6}}}}}, sym)).exit_code == kExitOk);
  CHECK(std::abs(json::parse(slurp(sym / "sweep.json"))["fitted_slope"].get<double>() - 2.0) <= 0.1);

  const fs::path one = scratch("sweep_one");
  REQUIRE(cmd_sweep_alpha(config_from(json{{"sweep", {{"alphas", {0.05}}}}}, one)).exit_code == kExitOk);
  const json single = json::parse(slurp(one / "sweep.json"));
  CHECK(single["slope_status"] == "not-computed");
  CHECK(single["fitted_slope"].is_null());
}

TEST_CASE("validate command") {
  const fs::path out = scratch("validate_airy");
  const CommandResult r = cmd_validate(config_from(json{{"validate", {{"suite", "airy"}}}}, out));
  CHECK(r.exit_code == kExitOk);
  const json report = json::parse(slurp(out / "validate_report.json"));
  CHECK(report["failed"] == 0);
  for (const auto& c : report["checks"]) CHECK(c["suite"] == "airy");

  const fs::path coarse = scratch("validate_coarse");
  const CommandResult bad =
      cmd_validate(config_from(json{{"validate", {{"suite", "oracle"}, {"oracle_points", 101}}}}, coarse));
  CHECK(bad.exit_code == kExitValidation);

  CHECK_THROWS_AS(parse_config(json{{"validate", {{"suite", "nope"}}}}), ConfigError);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1e-300) == "1e-300");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(-INFINITY) == "-inf");
}
