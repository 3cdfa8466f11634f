#include "swkb/cli/config.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <set>

#include <openssl/evp.h>

#include "swkb/checks.hpp"
#include "swkb/classical_limit.hpp"
#include "swkb/errors.hpp"

namespace swkb::cli {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
}

template <class T>
void read(const json& obj, const std::string& where, const char* key, T& out) {
  if (!obj.contains(key)) return;
  const json& value = obj.at(key);
  const std::string path = where + "." + key;
  if constexpr (std::is_same_v<T, bool>) {
    if (!value.is_boolean()) throw ConfigError(path + ": expected true or false");
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (!value.is_string()) throw ConfigError(path + ": expected a string");
  } else if constexpr (std::is_integral_v<T>) {
    if (!value.is_number_integer()) throw ConfigError(path + ": expected an integer");
    if constexpr (std::is_unsigned_v<T>) {
      if (value.is_number_integer() && !value.is_number_unsigned()) throw ConfigError(path + ": must be >= 0");
    }
  } else if constexpr (std::is_same_v<T, std::vector<double>>) {
    if (!value.is_array() || !std::all_of(value.begin(), value.end(), [](const json& e) { return e.is_number(); })) {
      throw ConfigError(path + ": expected an array of numbers");
    }
  } else {
    if (!value.is_number()) throw ConfigError(path + ": expected a number");
  }
  out = value.get<T>();
}

Domain read_domain(const json& obj, const std::string& where, Domain fallback) {
  if (!obj.contains("domain")) return fallback;
  std::vector<double> d;
  read(obj, where, "domain", d);
  if (d.size() != 2) throw ConfigError(where + ".domain: expected [lo, hi]");
  return {d[0], d[1]};
}

void parse_potential(const json& obj, PotentialConfig& p, const std::filesystem::path& base_dir) {
  const std::string where = "potential";
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  read(obj, where, "kind", p.kind);
  if (p.kind == "harmonic") {
    reject_unknown(obj, where, {"kind", "omega", "center", "domain"});
    read(obj, where, "omega", p.omega);
    read(obj, where, "center", p.center);
    p.domain = read_domain(obj, where, {-15.0, 15.0});
  } else if (p.kind == "linear") {
    reject_unknown(obj, where, {"kind", "force", "hard_wall", "domain"});
    read(obj, where, "force", p.force);
    read(obj, where, "hard_wall", p.hard_wall);
    p.domain = read_domain(obj, where, {0.0, 40.0});
  } else if (p.kind == "quartic") {
    reject_unknown(obj, where, {"kind", "lambda", "domain"});
    read(obj, where, "lambda", p.lambda);
    p.domain = read_domain(obj, where, {-6.0, 6.0});
  } else if (p.kind == "morse") {
    reject_unknown(obj, where, {"kind", "depth", "width", "center", "domain"});
    read(obj, where, "depth", p.depth);
    read(obj, where, "width", p.width);
    read(obj, where, "center", p.center);
    p.domain = read_domain(obj, where, {-2.0, 20.0});
  } else if (p.kind == "tabulated") {
    reject_unknown(obj, where, {"kind", "x", "v", "file"});
    if (obj.contains("file")) {
      if (obj.contains("x") || obj.contains("v")) throw ConfigError(where + ": give either file or x/v samples");
      std::string file;
      read(obj, where, "file", file);
      std::filesystem::path path(file);
      if (path.is_relative()) path = base_dir / path;
      try {
        const Potential pot = Potential::tabulated_from_csv(path);
        const auto& samples = std::get<Tabulated>(pot.kind());
        p.x = samples.x;
        p.v = samples.v;
      } catch (const Error& e) {
        throw ConfigError(where + ".file: " + e.what());
      }
    } else {
      read(obj, where, "x", p.x);
      read(obj, where, "v", p.v);
    }
    if (!p.x.empty()) p.domain = {p.x.front(), p.x.back()};
  } else {
    throw ConfigError(where + ".kind: unknown potential kind '" + p.kind + "'");
  }
}

}  // namespace

RunConfig default_config() {
  RunConfig c;
  c.sweep.alphas = log_spaced_alphas(0.1, 1e-3, 7);
  return c;
}

RunConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  if (doc.contains("manifest_version")) {
    reject_unknown(doc, "manifest", {"manifest_version", "tool", "version", "command", "config", "config_sha256",
                                     "tolerances", "results", "files"});
    if (!doc.contains("config")) throw ConfigError("manifest: missing config");
    return parse_config(doc.at("config"), base_dir);
  }
  reject_unknown(doc, "config", {"potential", "params", "spectrum", "wavefunction", "sweep", "validate", "output"});
  RunConfig c = default_config();
  if (doc.contains("potential")) parse_potential(doc.at("potential"), c.potential, base_dir);
  if (doc.contains("params")) {
    const json& o = doc.at("params");
    reject_unknown(o, "params", {"alpha", "mass", "hbar"});
    read(o, "params", "alpha", c.params.alpha);
    read(o, "params", "mass", c.params.mass);
    read(o, "params", "hbar", c.params.hbar);
  }
  if (doc.contains("spectrum")) {
    const json& o = doc.at("spectrum");
    reject_unknown(o, "spectrum", {"n_max", "rule", "oracle_points"});
    read(o, "spectrum", "n_max", c.spectrum.n_max);
    read(o, "spectrum", "rule", c.spectrum.rule);
    read(o, "spectrum", "oracle_points", c.spectrum.oracle_points);
  }
  if (doc.contains("wavefunction")) {
    const json& o = doc.at("wavefunction");
    reject_unknown(o, "wavefunction", {"n", "samples", "oracle_points"});
    read(o, "wavefunction", "n", c.wavefunction.n);
    read(o, "wavefunction", "samples", c.wavefunction.samples);
    read(o, "wavefunction", "oracle_points", c.wavefunction.oracle_points);
  }
  if (doc.contains("sweep")) {
    const json& o = doc.at("sweep");
    reject_unknown(o, "sweep", {"alphas", "interval", "energy", "spectra_n_max"});
    read(o, "sweep", "alphas", c.sweep.alphas);
    if (o.contains("interval")) {
      std::vector<double> iv;
      read(o, "sweep", "interval", iv);
      if (iv.size() != 2) throw ConfigError("sweep.interval: expected [x_from, x_to]");
      c.sweep.x_from = iv[0];
      c.sweep.x_to = iv[1];
    }
    read(o, "sweep", "energy", c.sweep.energy);
    read(o, "sweep", "spectra_n_max", c.sweep.spectra_n_max);
  }
  if (doc.contains("validate")) {
    const json& o = doc.at("validate");
    reject_unknown(o, "validate", {"suite", "seed", "oracle_points"});
    read(o, "validate", "suite", c.validate.suite);
    read(o, "validate", "seed", c.validate.seed);
    read(o, "validate", "oracle_points", c.validate.oracle_points);
  }
  if (doc.contains("output")) {
    const json& o = doc.at("output");
    reject_unknown(o, "output", {"dir", "format"});
    read(o, "output", "dir", c.output.dir);
    read(o, "output", "format", c.output.format);
  }
  validate(c);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_config(doc, path.parent_path());
}

void validate(const RunConfig& c) {
  auto require = [](bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
  };
  require(c.params.alpha > 0.0 && c.params.alpha <= 1.0, "params.alpha must lie in (0, 1]");
  require(c.params.mass > 0.0, "params.mass must be positive");
  require(c.params.hbar > 0.0, "params.hbar must be positive");
  require(c.spectrum.n_max >= -1 && c.spectrum.n_max <= 1000, "spectrum.n_max must lie in [-1, 1000]");
  require(c.spectrum.rule == "half" || c.spectrum.rule == "old", "spectrum.rule must be half or old");
  require(c.spectrum.oracle_points >= 3, "spectrum.oracle_points must be at least 3");
  require(c.wavefunction.n >= 0, "wavefunction.n must be non-negative");
  require(c.wavefunction.oracle_points >= 3, "wavefunction.oracle_points must be at least 3");
  require(c.wavefunction.samples >= 2 && c.wavefunction.samples <= c.wavefunction.oracle_points &&
              (c.wavefunction.oracle_points - 1) % (c.wavefunction.samples - 1) == 0,
          "wavefunction.samples - 1 must divide wavefunction.oracle_points - 1");
  require(!c.sweep.alphas.empty(), "sweep.alphas must not be empty");
  for (std::size_t i = 0; i < c.sweep.alphas.size(); ++i) {
    require(c.sweep.alphas[i] > 0.0 && c.sweep.alphas[i] <= 1.0, "sweep.alphas must lie in (0, 1]");
    require(i == 0 || c.sweep.alphas[i] < c.sweep.alphas[i - 1], "sweep.alphas must be strictly decreasing");
  }
  require(c.sweep.x_from < c.sweep.x_to, "sweep.interval must satisfy x_from < x_to");
  require(c.sweep.spectra_n_max >= -1, "sweep.spectra_n_max must be >= -1");
  const auto& suites = checks::suite_names();
  require(c.validate.suite == "all" || std::find(suites.begin(), suites.end(), c.validate.suite) != suites.end(),
          "validate.suite: unknown suite '" + c.validate.suite + "'");
  require(c.validate.oracle_points >= 3, "validate.oracle_points must be at least 3");
  require(!c.output.dir.empty(), "output.dir must not be empty");
  require(c.output.format == "csv" || c.output.format == "json" || c.output.format == "both",
          "output.format must be csv, json or both");
  try {
    (void)build_potential(c);
  } catch (const Error& e) {
    throw ConfigError(std::string("potential: ") + e.what());
  }
}

void apply_overrides(RunConfig& c, const Overrides& o) {
  if (o.out) c.output.dir = *o.out;
  if (o.alpha) c.params.alpha = *o.alpha;
  if (o.rule) c.spectrum.rule = *o.rule;
  if (o.format) c.output.format = *o.format;
  if (o.seed) c.validate.seed = *o.seed;
  validate(c);
}

json to_json(const RunConfig& c) {
  json pot{{"kind", c.potential.kind}};
  const auto& p = c.potential;
  const json domain = {p.domain.lo, p.domain.hi};
  if (p.kind == "harmonic") {
    pot.update({{"omega", p.omega}, {"center", p.center}, {"domain", domain}});
  } else if (p.kind == "linear") {
    pot.update({{"force", p.force}, {"hard_wall", p.hard_wall}, {"domain", domain}});
  } else if (p.kind == "quartic") {
    pot.update({{"lambda", p.lambda}, {"domain", domain}});
  } else if (p.kind == "morse") {
    pot.update({{"depth", p.depth}, {"width", p.width}, {"center", p.center}, {"domain", domain}});
  } else {
    pot.update({{"x", p.x}, {"v", p.v}});
  }
  return {
      {"potential", pot},
      {"params", {{"alpha", c.params.alpha}, {"mass", c.params.mass}, {"hbar", c.params.hbar}}},
      {"spectrum",
       {{"n_max", c.spectrum.n_max}, {"rule", c.spectrum.rule}, {"oracle_points", c.spectrum.oracle_points}}},
      {"wavefunction",
       {{"n", c.wavefunction.n},
        {"samples", c.wavefunction.samples},
        {"oracle_points", c.wavefunction.oracle_points}}},
      {"sweep",
       {{"alphas", c.sweep.alphas},
        {"interval", {c.sweep.x_from, c.sweep.x_to}},
        {"energy", c.sweep.energy},
        {"spectra_n_max", c.sweep.spectra_n_max}}},
      {"validate",
       {{"suite", c.validate.suite}, {"seed", c.validate.seed}, {"oracle_points", c.validate.oracle_points}}},
      {"output", {{"dir", c.output.dir}, {"format", c.output.format}}},
  };
}

std::string config_hash(const RunConfig& config) {
  json doc = to_json(config);
  doc.erase("output");
  const std::string text = doc.dump();
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(text.data(), text.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::string hex;
  char byte[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(byte, sizeof byte, "%02x", digest[i]);
    hex += byte;
  }
  return hex;
}

Potential build_potential(const RunConfig& c) {
  const auto& p = c.potential;
  if (p.kind == "harmonic") return Potential::harmonic(p.omega, p.center, c.params.mass, p.domain);
  if (p.kind == "linear") return Potential::linear(p.force, p.hard_wall, p.domain);
  if (p.kind == "quartic") return Potential::quartic(p.lambda, p.domain);
  if (p.kind == "morse") return Potential::morse(p.depth, p.width, p.center, p.domain);
  if (p.kind == "tabulated") return Potential::tabulated(p.x, p.v);
  throw ConfigError("unknown potential kind '" + p.kind + "'");
}

ScreeningParams build_params(const RunConfig& c) {
  return ScreeningParams(c.params.alpha, c.params.mass, c.params.hbar);
}

}  // namespace swkb::cli
