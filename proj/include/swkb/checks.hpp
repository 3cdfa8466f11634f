#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swkb/params.hpp"
#include "swkb/potentials.hpp"

namespace swkb::checks {

/// One measured quantity compared against its bound.
struct Check {
  std::string suite;
  int criterion = 0;
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::string note;
};

struct Options {
  std::uint64_t seed = 42;
  int oracle_points = 8001;
};

/// params, airy, series, quantization, oracle, wavefunction, classical.
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Throws DomainError for an
/// unknown name.
std::vector<Check> run_suite(const std::string& suite, const Options& options);

/// Potentials used by the randomized invariant checks, each with an energy
/// that has a single allowed region.
struct CatalogEntry {
  std::string name;
  Potential potential;
  ScreeningParams params;
  double energy;
};
std::vector<CatalogEntry> catalog();

/// Interval of the allowed region of the entry that keeps clear of the
/// turning-point exclusion zones (and a small margin from a hard wall).
std::pair<double, double> clear_allowed_interval(const CatalogEntry& entry);

std::vector<Check> screening_checks(const Options& options);
std::vector<Check> airy_checks(const Options& options);
std::vector<Check> riccati_scaling_checks(const Options& options);
std::vector<Check> recursion_checks(const Options& options);
std::vector<Check> amplitude_identity_checks(const Options& options);
std::vector<Check> harmonic_quantization_checks(const Options& options);
std::vector<Check> harmonic_oracle_checks(const Options& options);
std::vector<Check> bouncer_checks(const Options& options);
std::vector<Check> numerov_order_checks(const Options& options);
std::vector<Check> wavefunction_checks(const Options& options);
std::vector<Check> classical_limit_checks(const Options& options);

}  // namespace swkb::checks
