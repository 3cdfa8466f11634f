#include "swkb/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "swkb/errors.hpp"
#include "swkb/numerics.hpp"

namespace swkb {
namespace {

constexpr numerics::QuadratureTolerance kPhaseTolerance{1e-12, 1e-300};

// (1/(alpha hbar)) int_from^x f(x') dx' with x' = from + (x - from) u^2, which
// removes a square-root zero of f at `from`.
template <class F>
double anchored_integral(F&& f, double from, double x, const ScreeningParams& params) {
  if (x == from) return 0.0;
  const double span = x - from;
  auto integrand = [&](double u) { return f(from + span * u * u) * 2.0 * span * u; };
  return numerics::integrate(integrand, 0.0, 1.0, kPhaseTolerance) / effective_hbar(params);
}

// Integral of dx / p between the classical endpoints, for the normalization.
double inverse_momentum_integral(const LocalMomentum& lm, double lo, double hi, bool lo_is_wall) {
  auto inv_p = [&](double x) { return 1.0 / std::sqrt(std::max(lm.p_squared(x), 0.0)); };
  const numerics::QuadratureTolerance tol{1e-10, 0.0};
  if (lo_is_wall) {
    const double span = hi - lo;
    // x = lo + span sin(theta) on [0, pi/2]; cos(theta) cancels the 1/sqrt zero at hi.
    auto integrand = [&](double t) {
      const double c = std::cos(t);
      if (c <= 0.0) return 0.0;
      return span * c * inv_p(std::min(lo + span * std::sin(t), hi));
    };
    return numerics::integrate(integrand, 0.0, 0.5 * std::numbers::pi, tol);
  }
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  auto integrand = [&](double t) {
    const double c = std::cos(t);
    if (c <= 0.0) return 0.0;
    return half * c * inv_p(std::clamp(mid + half * std::sin(t), lo, hi));
  };
  return numerics::integrate(integrand, -0.5 * std::numbers::pi, 0.5 * std::numbers::pi, tol);
}

void push_region(std::vector<Region>& out, Region r) {
  if (r.hi > r.lo) out.push_back(r);
}

}  // namespace

std::string_view to_string(RegionKind kind) noexcept {
  switch (kind) {
    case RegionKind::allowed:
      return "allowed";
    case RegionKind::forbidden:
      return "forbidden";
    case RegionKind::connection:
      return "connection";
  }
  return "unknown";
}

double momentum_phase(const LocalMomentum& lm, const ScreeningParams& params, double turning_point, double x) {
  auto p = [&](double s) { return std::sqrt(std::max(lm.p_squared(s), 0.0)); };
  return anchored_integral(p, turning_point, x, params);
}

double decay_exponent(const LocalMomentum& lm, const ScreeningParams& params, double turning_point, double x) {
  auto kappa = [&](double s) { return std::sqrt(std::max(-lm.p_squared(s), 0.0)); };
  return std::abs(anchored_integral(kappa, turning_point, x, params));
}

std::array<Complex, 2> TransferMap::apply(const std::array<Complex, 2>& v) const {
  return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}

TransferMap TransferMap::inverse() const {
  const Complex det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  return {{{{m[1][1] / det, -m[0][1] / det}, {-m[1][0] / det, m[0][0] / det}}}};
}

TransferMap connect_at_turning_point(AllowedSide side) {
  // Decaying D and growing G on the forbidden side continue into
  //   (1/sqrt p) [2 D cos(zeta - pi/4) - G sin(zeta - pi/4)],
  // zeta being the phase measured from the turning point into the allowed side.
  const Complex minus = std::polar(1.0, -0.25 * std::numbers::pi);
  const Complex plus = std::polar(1.0, 0.25 * std::numbers::pi);
  const Complex i_half(0.0, 0.5);
  // Rows give the coefficients of exp(+i zeta) and exp(-i zeta); columns act on (G, D).
  TransferMap t{{{{i_half * minus, minus}, {-i_half * plus, plus}}}};
  // Allowed region on the left: zeta = -Phi, so the exponentials trade places.
  if (side == AllowedSide::left) std::swap(t.m[0], t.m[1]);
  return t;
}

double uniform_argument(const Potential& potential, const ScreeningParams& params, double tp, double x) {
  const double force = potential.slope(tp);
  if (force == 0.0) throw DegenerateTurningPointError("V'(tp) = 0: the linear turning-point model does not apply");
  const double hb = effective_hbar(params);
  const double scale = std::cbrt(2.0 * params.mass_total() * std::abs(force) / (hb * hb));
  return scale * std::copysign(1.0, force) * (x - tp);
}

double uniform_wavefunction(const Potential& potential, double /*energy*/, const ScreeningParams& params, double tp,
                            double x, double amplitude) {
  return amplitude * airy_ai(uniform_argument(potential, params, tp, x));
}

double uniform_amplitude(const Potential& potential, const ScreeningParams& params, double tp, double decay) {
  const double force = potential.slope(tp);
  if (force == 0.0) throw DegenerateTurningPointError("V'(tp) = 0: the linear turning-point model does not apply");
  const double c = 2.0 * params.mass_total() * std::abs(force) * effective_hbar(params);
  return 2.0 * std::sqrt(std::numbers::pi) * decay / std::pow(c, 1.0 / 6.0);
}

double amplitude_identity_defect(const LocalMomentum& lm, double x_from, double x_to) {
  const double e = lm.energy();
  const double near = 1e-12 * std::max(std::abs(e), 1.0);
  for (double x : {x_from, x_to}) {
    const double g = lm.gap(x);
    if (std::abs(g) < near) throw NearTurningPointError("endpoint sits on a turning point");
    if (g < 0.0) throw ForbiddenRegionError("endpoint lies in a classically forbidden region");
  }
  const double lo = std::min(x_from, x_to);
  const double hi = std::max(x_from, x_to);
  for (double tp : lm.turning_points()) {
    if (tp > lo && tp < hi) throw NearTurningPointError("interval crosses a turning point");
  }
  const Potential& pot = lm.potential();
  auto integrand = [&](double x) { return pot.slope(x) / (4.0 * lm.gap(x)); };
  const double integral = numerics::integrate(integrand, x_from, x_to, {1e-13, 1e-15});
  return std::abs(integral + 0.5 * (std::log(lm.p(x_to)) - std::log(lm.p(x_from))));
}

WkbWavefunction::WkbWavefunction(const Potential& potential, double energy, const ScreeningParams& params,
                                 std::vector<Region> regions)
    : momentum_(potential, energy, params), energy_(energy), params_(params), regions_(std::move(regions)) {
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    if (!(regions_[i].hi > regions_[i].lo)) throw DomainError("empty wavefunction region");
    if (i > 0 && regions_[i].lo < regions_[i - 1].hi) throw DomainError("wavefunction regions overlap");
  }
}

WkbWavefunction WkbWavefunction::bound_state(const Potential& potential, double energy, const ScreeningParams& params,
                                             bool normalize) {
  WkbWavefunction wf(potential, energy, params, {});
  const LocalMomentum& lm = wf.momentum_;
  const auto& tps = lm.turning_points();
  const Domain& d = potential.domain();
  const bool wall = potential.has_hard_wall();

  if (wall) {
    if (tps.size() != 1) {
      throw TopologyError("bound state against a wall needs one turning point, found " + std::to_string(tps.size()));
    }
    const double x2 = tps[0];
    const double eps = turning_point_exclusion(lm, params, x2);
    const double decay = normalize ? 1.0 / std::sqrt(2.0 * inverse_momentum_integral(lm, d.lo, x2, true)) : 1.0;
    const auto inner = connect_at_turning_point(AllowedSide::left).apply({0.0, decay});
    const double amp = uniform_amplitude(potential, params, x2, decay);
    const double split = std::max(x2 - eps, d.lo);
    push_region(wf.regions_, {d.lo, split, RegionKind::allowed, inner[0], inner[1], x2});
    push_region(wf.regions_, {split, std::min(x2 + eps, d.hi), RegionKind::connection, amp, 0.0, x2, 0});
    push_region(wf.regions_, {std::min(x2 + eps, d.hi), d.hi, RegionKind::forbidden, 0.0, decay, x2});
    wf.decay_amplitude_ = {0.0, decay};
    return wf;
  }

  if (tps.size() != 2) {
    throw TopologyError("bound state needs two turning points, found " + std::to_string(tps.size()));
  }
  const double x1 = tps[0];
  const double x2 = tps[1];
  const double eps1 = turning_point_exclusion(lm, params, x1);
  const double eps2 = turning_point_exclusion(lm, params, x2);
  const double left_decay = normalize ? 1.0 / std::sqrt(2.0 * inverse_momentum_integral(lm, x1, x2, false)) : 1.0;

  const auto inner = connect_at_turning_point(AllowedSide::right).apply({0.0, left_decay});
  // Re-anchor the standing wave at x2 and read off the right-hand tail.
  const double total = momentum_phase(lm, params, x1, x2);
  const std::array<Complex, 2> at_x2{inner[0] * std::polar(1.0, total), inner[1] * std::polar(1.0, -total)};
  const auto tail = connect_at_turning_point(AllowedSide::left).inverse().apply(at_x2);
  const double right_decay = tail[1].real();
  wf.discarded_growth_ = std::abs(tail[0]);

  double a = x1 + eps1;
  double b = x2 - eps2;
  if (a >= b) a = b = 0.5 * (x1 + x2);
  const double lo_conn = std::max(x1 - eps1, d.lo);
  const double hi_conn = std::min(x2 + eps2, d.hi);
  push_region(wf.regions_, {d.lo, lo_conn, RegionKind::forbidden, 0.0, left_decay, x1});
  push_region(wf.regions_, {lo_conn, a, RegionKind::connection,
                            uniform_amplitude(potential, params, x1, left_decay), 0.0, x1, 0});
  push_region(wf.regions_, {a, b, RegionKind::allowed, inner[0], inner[1], x1});
  push_region(wf.regions_, {b, hi_conn, RegionKind::connection,
                            uniform_amplitude(potential, params, x2, right_decay), 0.0, x2, 1});
  push_region(wf.regions_, {hi_conn, d.hi, RegionKind::forbidden, 0.0, right_decay, x2});
  wf.decay_amplitude_ = {left_decay, right_decay};
  return wf;
}

const Region& WkbWavefunction::region_at(double x) const {
  for (const Region& r : regions_) {
    if (x >= r.lo && x <= r.hi) return r;
  }
  throw DomainError("x = " + std::to_string(x) + " is outside every wavefunction region");
}

Complex evaluate(const WkbWavefunction& wf, double x) {
  const Region& r = wf.region_at(x);
  const LocalMomentum& lm = wf.momentum();
  switch (r.kind) {
    case RegionKind::connection:
      throw UseUniformError("x = " + std::to_string(x) + " is inside a turning-point connection region");
    case RegionKind::allowed: {
      const double phase = momentum_phase(lm, wf.params(), r.anchor, x);
      return (r.c1 * std::polar(1.0, phase) + r.c2 * std::polar(1.0, -phase)) / std::sqrt(lm.p(x));
    }
    case RegionKind::forbidden: {
      const double exponent = decay_exponent(lm, wf.params(), r.anchor, x);
      Complex value = r.c2 * std::exp(-exponent);
      if (r.c1 != 0.0) value += r.c1 * std::exp(exponent);
      return value / std::sqrt(lm.kappa(x));
    }
  }
  return {};
}

Complex evaluate_with_uniform(const WkbWavefunction& wf, double x) {
  const Region& r = wf.region_at(x);
  if (r.kind != RegionKind::connection) return evaluate(wf, x);
  return uniform_wavefunction(wf.potential(), wf.energy(), wf.params(), r.anchor, x, r.c1.real());
}

}  // namespace swkb
