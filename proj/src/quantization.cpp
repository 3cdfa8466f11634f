#include "swkb/quantization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "swkb/errors.hpp"
#include "swkb/numerics.hpp"

namespace swkb {

QuantizationRule QuantizationRule::connection() {
  return {0.5, "connection-formula rule: action = 2 pi alpha hbar (n + 1/2)"};
}

QuantizationRule QuantizationRule::old_quantum() {
  return {0.0, "old quantum theory rule: action = 2 pi alpha hbar n"};
}

QuantizationRule QuantizationRule::from_name(const std::string& name) {
  if (name == "half") return connection();
  if (name == "old") return old_quantum();
  throw DomainError("unknown quantization rule '" + name + "' (expected half or old)");
}

std::string QuantizationRule::name() const { return maslov_offset == 0.0 ? "old" : "half"; }

double effective_offset(const QuantizationRule& rule, const Potential& potential) {
  if (rule.maslov_offset == 0.0) return 0.0;
  return potential.has_hard_wall() ? 0.75 : rule.maslov_offset;
}

double action_integral(const Potential& potential, double energy, const ScreeningParams& params) {
  const auto tps = turning_points(potential, energy);
  const double mass = params.mass_total();
  auto momentum = [&](double x) { return std::sqrt(2.0 * mass * std::max(energy - potential.value(x), 0.0)); };
  const numerics::QuadratureTolerance tol{1e-12, 0.0};

  if (potential.has_hard_wall()) {
    if (tps.size() != 1) {
      throw TopologyError("hard-wall action needs exactly one turning point, found " + std::to_string(tps.size()));
    }
    const double wall = potential.domain().lo;
    const double span = tps.front() - wall;
    // x = wall + span sin(theta) turns the square-root end into a smooth zero.
    auto integrand = [&](double theta) {
      return momentum(std::min(wall + span * std::sin(theta), tps.front())) * span * std::cos(theta);
    };
    return 2.0 * numerics::integrate(integrand, 0.0, 0.5 * std::numbers::pi, tol);
  }
  if (tps.size() != 2) {
    throw TopologyError("action integral needs exactly two turning points, found " + std::to_string(tps.size()));
  }
  const double mid = 0.5 * (tps[0] + tps[1]);
  const double half = 0.5 * (tps[1] - tps[0]);
  auto integrand = [&](double theta) {
    const double x = std::clamp(mid + half * std::sin(theta), tps[0], tps[1]);
    return momentum(x) * half * std::cos(theta);
  };
  return 2.0 * numerics::integrate(integrand, -0.5 * std::numbers::pi, 0.5 * std::numbers::pi, tol);
}

QuantizedLevel quantize_level(const Potential& potential, int n, const ScreeningParams& params,
                              const QuantizationRule& rule, std::optional<double> lower_hint) {
  if (n < 0) throw DomainError("quantum number must be non-negative");
  const double mu = effective_offset(rule, potential);
  if (n + mu <= 0.0) throw DomainError("n + mu = 0 selects the trivial orbit E = V_min");
  const double target = 2.0 * std::numbers::pi * effective_hbar(params) * (n + mu);

  const Domain& d = potential.domain();
  const double v_min = potential.minimum_value();
  const double ceiling = potential.has_hard_wall() ? potential.value(d.hi)
                                                   : std::min(potential.value(d.lo), potential.value(d.hi));
  if (!(ceiling > v_min)) throw NoBoundStateError("potential is not confining on its domain");
  const double top = v_min + (ceiling - v_min) * (1.0 - 1e-12);
  auto defect = [&](double e) { return action_integral(potential, e, params) - target; };

  QuantizedLevel level;
  level.n = n;
  double lo = v_min;
  if (lower_hint && *lower_hint > v_min && *lower_hint < top && defect(*lower_hint) < 0.0) lo = *lower_hint;
  double step = (ceiling - v_min) * std::ldexp(1.0, -20);
  double hi = std::min(lo + step, top);
  while (defect(hi) < 0.0) {
    ++level.iterations;
    if (hi >= top) {
      throw NoBoundStateError("level n = " + std::to_string(n) + " lies above the confinement ceiling " +
                              std::to_string(ceiling));
    }
    lo = hi;
    step *= 2.0;
    hi = std::min(lo + step, top);
  }
  // At lo == v_min the orbit is degenerate; the defect there is -target.
  auto safe_defect = [&](double e) { return e <= v_min ? -target : defect(e); };
  const auto root = numerics::find_root(safe_defect, lo, hi, 1e-13, ceiling - v_min);
  level.iterations += root.iterations;
  level.energy = root.root;
  level.action_defect = std::abs(defect(level.energy));
  return level;
}

double quantize(const Potential& potential, int n, const ScreeningParams& params, const QuantizationRule& rule) {
  return quantize_level(potential, n, params, rule).energy;
}

EnergySpectrum spectrum(const Potential& potential, int n_max, const ScreeningParams& params,
                        const QuantizationRule& rule) {
  EnergySpectrum out;
  out.rule = rule;
  out.params = params;
  out.potential = &potential;
  const int first = effective_offset(rule, potential) == 0.0 ? 1 : 0;
  std::optional<double> hint;
  for (int n = first; n <= n_max; ++n) {
    try {
      QuantizedLevel level = quantize_level(potential, n, params, rule, hint);
      hint = level.energy;
      out.levels.push_back(level);
    } catch (const Error& e) {
      out.failures.push_back({n, e.what()});
      break;
    }
  }
  return out;
}

}  // namespace swkb
