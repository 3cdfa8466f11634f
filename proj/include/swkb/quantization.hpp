#pragma once

#include <optional>
#include <string>
#include <vector>

#include "swkb/params.hpp"
#include "swkb/potentials.hpp"

namespace swkb {

/// Action condition  closed action = 2 pi alpha hbar (n + mu).
struct QuantizationRule {
  double maslov_offset = 0.5;
  std::string description;

  /// mu = 1/2: two smooth turning points joined by the Airy connection formula.
  static QuantizationRule connection();
  /// mu = 0: integer rule of the old quantum theory.
  static QuantizationRule old_quantum();
  /// "half" or "old"; throws DomainError otherwise.
  static QuantizationRule from_name(const std::string& name);
  std::string name() const;
};

/// Offset actually used for a potential: the connection rule picks up 3/4
/// when the left boundary is a hard wall (1/4 from the smooth turning point,
/// 1/2 from the wall). The old rule stays at 0.
double effective_offset(const QuantizationRule& rule, const Potential& potential);

/// Closed-orbit action 2 int_{x1}^{x2} sqrt(2M(E - V)) dx between the two
/// turning points (or the wall and the single turning point). Throws
/// TopologyError for any other turning-point layout.
double action_integral(const Potential& potential, double energy, const ScreeningParams& params);

struct QuantizedLevel {
  int n = 0;
  double energy = 0.0;
  int iterations = 0;
  double action_defect = 0.0;  // |action(E) - target|
};

/// Solves action(E) = 2 pi alpha hbar (n + mu). lower_hint, when given, is an
/// energy known to lie below the level (used to reuse brackets). Throws
/// NoBoundStateError when the level is above the confinement ceiling and
/// DomainError when n + mu = 0 (trivial orbit).
QuantizedLevel quantize_level(const Potential& potential, int n, const ScreeningParams& params,
                              const QuantizationRule& rule, std::optional<double> lower_hint = std::nullopt);

double quantize(const Potential& potential, int n, const ScreeningParams& params, const QuantizationRule& rule);

struct LevelFailure {
  int n;
  std::string message;
};

struct EnergySpectrum {
  std::vector<QuantizedLevel> levels;
  QuantizationRule rule;
  ScreeningParams params{1.0};
  const Potential* potential = nullptr;
  std::vector<LevelFailure> failures;

  bool complete() const noexcept { return failures.empty(); }
};

/// Levels 0..n_max (1..n_max when the offset is 0, the n = 0 orbit being
/// trivial). Stops at the first failing level and records it.
EnergySpectrum spectrum(const Potential& potential, int n_max, const ScreeningParams& params,
                        const QuantizationRule& rule);

}  // namespace swkb
