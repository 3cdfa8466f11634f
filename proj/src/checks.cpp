#include "swkb/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>

#include "swkb/airy.hpp"
#include "swkb/classical_limit.hpp"
#include "swkb/errors.hpp"
#include "swkb/oracle.hpp"
#include "swkb/quantization.hpp"
#include "swkb/wavefunction.hpp"
#include "swkb/wkb_series.hpp"

namespace swkb::checks {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Check make(std::string suite, int criterion, std::string name, double measured, double bound, std::string note = {}) {
  const bool pass = std::isfinite(measured) && measured <= bound;
  return {std::move(suite), criterion, std::move(name), measured, bound, pass, std::move(note)};
}

Check failed(std::string suite, int criterion, std::string name, double bound, const std::exception& e) {
  return {std::move(suite), criterion, std::move(name), kInf, bound, false, e.what()};
}

Potential harmonic_well() { return Potential::harmonic(1.0, 0.0, 1.0, {-15.0, 15.0}); }

Potential bouncer() { return Potential::linear(1.0, true, {0.0, 40.0}); }

Potential tabulated_anharmonic() {
  std::vector<double> x(241);
  std::vector<double> v(241);
  for (int i = 0; i < 241; ++i) {
    x[i] = -6.0 + 0.05 * i;
    v[i] = 0.5 * x[i] * x[i] + 0.05 * std::pow(x[i], 4);
  }
  return Potential::tabulated(std::move(x), std::move(v));
}

std::string format_alpha(double alpha) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", alpha);
  return buf;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"params",  "airy",         "series",   "quantization",
                                              "oracle", "wavefunction", "classical"};
  return names;
}

std::vector<CatalogEntry> catalog() {
  std::vector<CatalogEntry> out;
  out.push_back({"harmonic", harmonic_well(), ScreeningParams(1.0), 3.0});
  out.push_back({"linear", bouncer(), ScreeningParams(1.0, 0.5, 1.0), 5.0});
  out.push_back({"quartic", Potential::quartic(1.0, {-6.0, 6.0}), ScreeningParams(1.0), 4.0});
  out.push_back({"morse", Potential::morse(10.0, 1.0, 0.0, {-2.0, 20.0}), ScreeningParams(1.0), 5.0});
  out.push_back({"tabulated", tabulated_anharmonic(), ScreeningParams(1.0), 3.0});
  return out;
}

std::pair<double, double> clear_allowed_interval(const CatalogEntry& entry) {
  const LocalMomentum lm(entry.potential, entry.energy, entry.params);
  const auto& tps = lm.turning_points();
  if (entry.potential.has_hard_wall()) {
    if (tps.size() != 1) throw TopologyError(entry.name + ": expected one turning point");
    const double wall = entry.potential.domain().lo;
    return {wall + 1e-3 * (tps[0] - wall), tps[0] - turning_point_exclusion(lm, entry.params, tps[0])};
  }
  if (tps.size() != 2) throw TopologyError(entry.name + ": expected two turning points");
  return {tps[0] + turning_point_exclusion(lm, entry.params, tps[0]),
          tps[1] - turning_point_exclusion(lm, entry.params, tps[1])};
}

std::vector<Check> screening_checks(const Options&) {
  std::vector<Check> out;
  out.push_back(make("params", 9, "screening_size(1) == 1", std::abs(screening_size(1.0) - 1.0), 0.0));
  out.push_back(make("params", 9, "screening_size(0) == 0", std::abs(screening_size(0.0)), 0.0));
  out.push_back(make("params", 9, "screening_size(0.488) == 0.2", std::abs(screening_size(0.488) - 0.2), 1e-12));
  int violations = 0;
  double previous = screening_size(0.0);
  constexpr int kPoints = 10000;
  for (int i = 1; i < kPoints; ++i) {
    const double sigma = screening_size(static_cast<double>(i) / (kPoints - 1));
    if (!(sigma > previous)) ++violations;
    previous = sigma;
  }
  out.push_back(make("params", 9, "screening_size strictly increasing on 10^4 points", violations, 0.0));
  return out;
}

std::vector<Check> airy_checks(const Options&) {
  std::vector<Check> out;
  out.push_back(make("airy", 8, "Ai(0)", std::abs(airy_ai(0.0) - 0.3550280538878172), 1e-12));
  out.push_back(make("airy", 8, "Ai'(0)", std::abs(airy_ai_prime(0.0) + 0.2588194037928068), 1e-12));
  for (double x : {-5.0, 0.0, 5.0}) {
    const AiryValues a = airy(x);
    const double w = a.ai * a.bi_prime - a.ai_prime * a.bi;
    out.push_back(make("airy", 8, "Wronskian at x = " + format_alpha(x), std::abs(w - 1.0 / std::numbers::pi), 1e-10));
  }
  // w'' = x w by a fourth-order central difference, relative to the local
  // scale |x| sqrt(w^2 + w'^2 / |x|) so that zeros of w do not dominate.
  double worst = 0.0;
  const double h = 1e-3;
  using Fn = double (*)(double);
  const std::pair<Fn, Fn> functions[] = {{&airy_ai, &airy_ai_prime}, {&airy_bi, &airy_bi_prime}};
  for (double x = -9.5; x <= 9.5; x += 0.5) {
    for (const auto& [f, df] : functions) {
      const double d2 = (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
      const double ax = std::max(std::abs(x), 1.0);
      const double scale = ax * std::sqrt(f(x) * f(x) + df(x) * df(x) / ax);
      worst = std::max(worst, std::abs(d2 - x * f(x)) / scale);
    }
  }
  out.push_back(make("airy", 0, "Airy functions satisfy w'' = x w", worst, 1e-8));
  return out;
}

std::vector<Check> riccati_scaling_checks(const Options&) {
  std::vector<Check> out;
  const Potential pot = harmonic_well();
  const LocalMomentum lm(pot, 1.0, 1.0);
  const double x = 0.5;
  for (int k = 0; k <= 3; ++k) {
    const double expected = std::ldexp(1.0, k + 1);
    double worst = 0.0;
    double previous = std::abs(riccati_residual(lm, x, ScreeningParams(0.1), k, Branch::plus));
    for (int j = 1; j <= 7; ++j) {
      const double alpha = 0.1 * std::ldexp(1.0, -j);
      const double current = std::abs(riccati_residual(lm, x, ScreeningParams(alpha), k, Branch::plus));
      worst = std::max(worst, std::abs(previous / current / expected - 1.0));
      previous = current;
    }
    out.push_back(make("series", 3, "Riccati residual order " + std::to_string(k) + " halving ratio vs 2^" +
                                        std::to_string(k + 1),
                       worst, 0.2, "max relative deviation of the ratio, alpha = 0.1 .. 7.8e-4"));
  }
  return out;
}

std::vector<Check> recursion_checks(const Options& options) {
  std::vector<Check> out;
  int index = 0;
  for (const CatalogEntry& entry : catalog()) {
    const std::string name = "recursion vs closed forms, " + entry.name;
    try {
      const LocalMomentum lm(entry.potential, entry.energy, entry.params);
      const auto [lo, hi] = clear_allowed_interval(entry);
      std::mt19937_64 rng(options.seed + index++);
      std::uniform_real_distribution<double> pick(lo, hi);
      const int max_n = entry.potential.max_derivative_order() >= 3 ? 3 : 2;
      double worst = 0.0;
      for (int i = 0; i < 100; ++i) {
        const double x = pick(rng);
        for (int n = 1; n <= max_n; ++n) {
          for (Branch b : {Branch::plus, Branch::minus}) {
            const double defect = std::abs(recursion_defect(lm, x, entry.params, n, b));
            worst = std::max(worst, defect / recursion_term_scale(lm, x, entry.params, n, b));
          }
        }
      }
      out.push_back(make("series", 4, name, worst, 1e-5,
                         "orders 1.." + std::to_string(max_n) + ", 100 points, defect / term scale"));
    } catch (const Error& e) {
      out.push_back(failed("series", 4, name, 1e-5, e));
    }
  }
  return out;
}

std::vector<Check> amplitude_identity_checks(const Options& options) {
  std::vector<Check> out;
  int index = 0;
  for (const CatalogEntry& entry : catalog()) {
    const std::string name = "amplitude identity, " + entry.name;
    try {
      const LocalMomentum lm(entry.potential, entry.energy, entry.params);
      const auto [lo, hi] = clear_allowed_interval(entry);
      std::mt19937_64 rng(options.seed + 1000 + index++);
      std::uniform_real_distribution<double> pick(lo, hi);
      double worst = 0.0;
      for (int i = 0; i < 50; ++i) {
        const double a = pick(rng);
        const double b = pick(rng);
        const double scale = std::max({1.0, std::abs(std::log(lm.p(a))), std::abs(std::log(lm.p(b)))});
        worst = std::max(worst, amplitude_identity_defect(lm, a, b) / scale);
      }
      out.push_back(make("series", 5, name, worst, 1e-10, "50 subintervals, defect / max(1, |log p|)"));
    } catch (const Error& e) {
      out.push_back(failed("series", 5, name, 1e-10, e));
    }
  }
  return out;
}

std::vector<Check> harmonic_quantization_checks(const Options&) {
  std::vector<Check> out;
  const Potential pot = harmonic_well();
  for (double alpha : {1.0, 0.5, 0.1, 0.01}) {
    const std::string name = "WKB harmonic levels n <= 20, alpha = " + format_alpha(alpha);
    try {
      const ScreeningParams params(alpha);
      const EnergySpectrum s = spectrum(pot, 20, params, QuantizationRule::connection());
      if (!s.complete() || s.levels.size() != 21) throw ConvergenceError("spectrum incomplete");
      double worst = 0.0;
      for (const auto& level : s.levels) {
        const double exact = (level.n + 0.5) * alpha;
        worst = std::max(worst, std::abs(level.energy - exact) / exact);
      }
      out.push_back(make("quantization", 1, name, worst, 1e-8, "max relative error vs (n + 1/2) alpha"));
    } catch (const Error& e) {
      out.push_back(failed("quantization", 1, name, 1e-8, e));
    }
  }
  return out;
}

std::vector<Check> harmonic_oracle_checks(const Options& options) {
  std::vector<Check> out;
  const Potential pot = harmonic_well();
  for (double alpha : {1.0, 0.5, 0.1, 0.01}) {
    const std::string name = "oracle harmonic levels n <= 20 after refinement, alpha = " + format_alpha(alpha);
    try {
      const ScreeningParams params(alpha);
      double worst = 0.0;
      for (int n = 0; n <= 20; ++n) {
        const double e_ref = quantize(pot, n, params, QuantizationRule::connection());
        const Grid grid = oracle_grid(pot, params, e_ref, options.oracle_points);
        const double e = refined_eigenvalue(pot, n, params, grid).energy;
        const double exact = (n + 0.5) * alpha;
        worst = std::max(worst, std::abs(e - exact) / exact);
      }
      out.push_back(make("oracle", 1, name, worst, 1e-6,
                         "grid of " + std::to_string(options.oracle_points) + " points and its refinement"));
    } catch (const Error& e) {
      out.push_back(failed("oracle", 1, name, 1e-6, e));
    }
  }
  return out;
}

std::vector<Check> bouncer_checks(const Options& options) {
  std::vector<Check> out;
  const Potential pot = bouncer();
  const ScreeningParams params(1.0, 0.5, 1.0);
  try {
    std::vector<double> oracle;
    std::vector<double> errors;
    for (int k = 1; k <= 8; ++k) {
      const double wkb = quantize(pot, k - 1, params, QuantizationRule::connection());
      const Grid grid = oracle_grid(pot, params, wkb, options.oracle_points);
      oracle.push_back(refined_eigenvalue(pot, k - 1, params, grid).energy);
      errors.push_back(std::abs(wkb - oracle.back()) / oracle.back());
    }
    out.push_back(make("oracle", 2, "bouncer oracle E1 vs 2.338107", std::abs(oracle[0] - 2.338107), 5e-7));
    out.push_back(make("oracle", 2, "bouncer oracle E1 vs in-house Airy zero",
                       std::abs(oracle[0] + airy_ai_zero(1)) / oracle[0], 1e-8));
    out.push_back(make("oracle", 2, "bouncer WKB (mu = 3/4) E1 within 1% of oracle", errors[0], 0.01));
    int rises = 0;
    for (std::size_t i = 1; i < errors.size(); ++i) {
      if (!(errors[i] < errors[i - 1])) ++rises;
    }
    char note[64];
    std::snprintf(note, sizeof note, "error at n = 1: %.3e, n = 8: %.3e", errors.front(), errors.back());
    out.push_back(make("oracle", 2, "bouncer WKB error decreasing for n = 1..8", rises, 0.0, note));
  } catch (const Error& e) {
    out.push_back(failed("oracle", 2, "bouncer levels", 0.0, e));
  }
  return out;
}

std::vector<Check> numerov_order_checks(const Options&) {
  std::vector<Check> out;
  try {
    const Potential pot = harmonic_well();
    const ScreeningParams params(1.0);
    const Grid coarse{-10.0, 10.0, 201};
    const double e1 = eigenvalue_solve(pot, 3, params, coarse).energy;
    const double e2 = eigenvalue_solve(pot, 3, params, coarse.refined()).energy;
    const double ratio = std::abs(e1 - 3.5) / std::abs(e2 - 3.5);
    out.push_back(make("oracle", 8, "Numerov error ratio under grid halving vs 16", std::abs(ratio / 16.0 - 1.0), 0.3,
                       "ratio " + std::to_string(ratio)));
  } catch (const Error& e) {
    out.push_back(failed("oracle", 8, "Numerov error ratio under grid halving vs 16", 0.3, e));
  }
  return out;
}

std::vector<Check> wavefunction_checks(const Options& options) {
  std::vector<Check> out;
  const Potential pot = harmonic_well();
  const ScreeningParams params(1.0);
  const int n = 10;
  try {
    const double energy = quantize(pot, n, params, QuantizationRule::connection());
    const Grid grid = oracle_grid(pot, params, energy, options.oracle_points);
    const SolverReport oracle = eigenvalue_solve(pot, n, params, grid);
    const auto wf = WkbWavefunction::bound_state(pot, energy, params);
    const LocalMomentum& lm = wf.momentum();
    const auto& tps = wf.turning_points();

    // Deviations are measured against the local WKB envelope 2D/sqrt(p).
    double pointwise = 0.0;
    double imaginary = 0.0;
    for (int i = 0; i < grid.points; ++i) {
      const double x = grid.x(i);
      if (!(lm.gap(x) > 0.0) || validity_metric(lm, x, params) >= 0.1) continue;
      const Complex psi = evaluate(wf, x);
      const double envelope = 2.0 * wf.decay_amplitude(0) / std::sqrt(lm.p(x));
      pointwise = std::max(pointwise, std::abs(std::abs(psi.real()) - std::abs(oracle.psi[i])) / envelope);
      imaginary = std::max(imaginary, std::abs(psi.imag()) / envelope);
    }
    out.push_back(make("wavefunction", 7, "WKB vs oracle |psi|, harmonic n = 10, where metric < 0.1", pointwise, 0.02,
                       "max deviation relative to the WKB envelope"));
    out.push_back(make("wavefunction", 0, "WKB standing wave is real", imaginary, 1e-12));

    // Overlap annulus: metric < 0.1 and |s| > 2, out to twice the distance at
    // which the metric first drops below 0.1.
    double overlap = 0.0;
    for (int side = 0; side < 2; ++side) {
      const double tp = tps[side];
      const double amplitude = uniform_amplitude(pot, params, tp, wf.decay_amplitude(side));
      double inner = kInf;
      for (int i = 0; i < grid.points; ++i) {
        const double x = grid.x(i);
        if (lm.gap(x) > 0.0 && std::abs(x - tp) < std::abs(x - tps[1 - side]) &&
            validity_metric(lm, x, params) < 0.1) {
          inner = std::min(inner, std::abs(x - tp));
        }
      }
      for (int i = 0; i < grid.points; ++i) {
        const double x = grid.x(i);
        const double d = std::abs(x - tp);
        if (!(lm.gap(x) > 0.0) || d > 2.0 * inner || d >= std::abs(x - tps[1 - side])) continue;
        if (validity_metric(lm, x, params) >= 0.1 || std::abs(uniform_argument(pot, params, tp, x)) <= 2.0) continue;
        const double envelope = 2.0 * std::abs(wf.decay_amplitude(side)) / std::sqrt(lm.p(x));
        const double uniform = uniform_wavefunction(pot, energy, params, tp, x, amplitude);
        overlap = std::max(overlap, std::abs(uniform - evaluate(wf, x).real()) / envelope);
      }
    }
    out.push_back(make("wavefunction", 7, "Airy and WKB forms agree in the overlap annulus", overlap, 0.01,
                       "max deviation relative to the WKB envelope"));
  } catch (const Error& e) {
    out.push_back(failed("wavefunction", 7, "wavefunction fidelity", 0.02, e));
  }
  return out;
}

std::vector<Check> classical_limit_checks(const Options&) {
  std::vector<Check> out;
  const Potential pot = harmonic_well();
  const ScreeningParams base(1.0);
  const auto alphas = log_spaced_alphas(0.1, 1e-3, 7);
  struct Case {
    const char* name;
    double lo, hi, slope, tol;
  };
  for (const Case& c : {Case{"generic interval [0.1, 0.6]", 0.1, 0.6, 1.0, 0.05},
                        Case{"symmetric interval [-0.5, 0.5]", -0.5, 0.5, 2.0, 0.1}}) {
    const std::string name = std::string("classical-limit slope, ") + c.name;
    try {
      const LimitScan scan = convergence_scan(pot, 1.0, base, c.lo, c.hi, alphas);
      const double measured = scan.slope_computed ? std::abs(scan.fitted_slope - c.slope) : kInf;
      out.push_back(make("classical", 6, name, measured, c.tol, "slope " + std::to_string(scan.fitted_slope)));
    } catch (const Error& e) {
      out.push_back(failed("classical", 6, name, c.tol, e));
    }
  }
  return out;
}

std::vector<Check> run_suite(const std::string& suite, const Options& options) {
  using Runner = std::function<std::vector<Check>(const Options&)>;
  static const std::map<std::string, std::vector<Runner>> suites{
      {"params", {screening_checks}},
      {"airy", {airy_checks}},
      {"series", {riccati_scaling_checks, recursion_checks, amplitude_identity_checks}},
      {"quantization", {harmonic_quantization_checks}},
      {"oracle", {harmonic_oracle_checks, bouncer_checks, numerov_order_checks}},
      {"wavefunction", {wavefunction_checks}},
      {"classical", {classical_limit_checks}},
  };
  std::vector<Check> out;
  auto append = [&](const std::string& name) {
    for (const Runner& run : suites.at(name)) {
      auto part = run(options);
      out.insert(out.end(), part.begin(), part.end());
    }
  };
  if (suite == "all") {
    for (const std::string& name : suite_names()) append(name);
  } else if (suites.contains(suite)) {
    append(suite);
  } else {
    throw DomainError("unknown validation suite '" + suite + "'");
  }
  return out;
}

}  // namespace swkb::checks
