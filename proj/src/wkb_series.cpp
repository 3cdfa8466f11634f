#include "swkb/wkb_series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "swkb/errors.hpp"
#include "swkb/numerics.hpp"

namespace swkb {

namespace {

constexpr double kNearTurningRelative = 1e-12;

bool near_turning(const LocalMomentum& lm, double gap) {
  return std::abs(gap) < kNearTurningRelative * std::max(std::abs(lm.energy()), 1.0);
}

// (alpha / i)^n = (-i alpha)^n.
Complex expansion_power(double alpha, int n) {
  static constexpr Complex unit_powers[] = {{1.0, 0.0}, {0.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}};
  return unit_powers[n % 4] * std::pow(alpha, n);
}

void require_order(int order, int lo, int hi, const char* what) {
  if (order < lo || order > hi) {
    throw UnsupportedOrderError(std::string(what) + ": order " + std::to_string(order) + " outside " +
                                std::to_string(lo) + ".." + std::to_string(hi));
  }
}

}  // namespace

LocalMomentum::LocalMomentum(const Potential& potential, double energy, double mass)
    : potential_(&potential), energy_(energy), mass_(mass), turning_points_(swkb::turning_points(potential, energy)) {
  if (!(mass > 0.0)) throw DomainError("LocalMomentum: mass must be positive");
}

double LocalMomentum::p(double x) const {
  const double g = gap(x);
  if (g < 0.0) throw ForbiddenRegionError("local momentum requested where E < V (x = " + std::to_string(x) + ")");
  return std::sqrt(2.0 * mass_ * g);
}

double LocalMomentum::kappa(double x) const {
  const double g = gap(x);
  if (g > 0.0) throw ForbiddenRegionError("decay constant requested where E > V (x = " + std::to_string(x) + ")");
  return std::sqrt(-2.0 * mass_ * g);
}

double LocalMomentum::distance_to_turning_point(double x) const noexcept {
  double best = std::numeric_limits<double>::infinity();
  for (double t : turning_points_) best = std::min(best, std::abs(x - t));
  return best;
}

double SeriesTerms::term(int n) const {
  switch (n) {
    case 0: return y0;
    case 1: return y1;
    case 2: return y2;
    case 3: return y3;
    default: throw UnsupportedOrderError("series terms exist for n = 0..3");
  }
}

double y0(const LocalMomentum& lm, double x, Branch sign) { return branch_sign(sign) * lm.p(x); }

double y1(const LocalMomentum& lm, double x, const ScreeningParams& params) {
  const double g = lm.gap(x);
  if (near_turning(lm, g)) throw NearTurningPointError("y1 evaluated at a turning point");
  return params.hbar() * lm.potential().slope(x) / (4.0 * g);
}

double y2(const LocalMomentum& lm, double x, const ScreeningParams& params, Branch sign) {
  const double g = lm.gap(x);
  if (near_turning(lm, g)) throw NearTurningPointError("y2 evaluated at a turning point");
  if (g < 0.0) throw ForbiddenRegionError("y2 requires E > V");
  const double vp = lm.potential().slope(x);
  const double vpp = lm.potential().curvature(x);
  const double hbar = params.hbar();
  return -branch_sign(sign) * (hbar * hbar / 32.0) * (5.0 * vp * vp + 4.0 * vpp * g) /
         (std::sqrt(2.0 * lm.mass()) * std::pow(g, 2.5));
}

double series_step(const LocalMomentum& lm, double x) {
  const double g = lm.gap(x);
  if (near_turning(lm, g)) throw NearTurningPointError("finite-difference step requested at a turning point");
  if (g < 0.0) throw ForbiddenRegionError("series derivatives require E > V");
  const Domain& d = lm.potential().domain();
  const double vp = std::abs(lm.potential().slope(x));
  double length = vp > 0.0 ? 2.0 * g / vp : std::numeric_limits<double>::infinity();
  length = std::min(std::max(length, 1.0), d.width());
  double h = 1e-4 * length;
  h = std::min(h, lm.distance_to_turning_point(x) / 10.0);
  h = std::min(h, 0.5 * std::min(x - d.lo, d.hi - x));
  h = std::min(h, 0.5 * lm.potential().distance_to_knot(x));
  if (!(h > 1e-14 * d.width())) {
    throw NearTurningPointError("x = " + std::to_string(x) + " is too close to a turning point or domain edge");
  }
  return h;
}

double y3(const LocalMomentum& lm, double x, const ScreeningParams& params, Branch sign) {
  if (lm.potential().is_tabulated()) {
    throw UnsupportedOrderError("y3 needs a smooth V''; tabulated potentials are capped at order 2");
  }
  const double h = series_step(lm, x);
  auto ratio = [&](double t) { return y2(lm, t, params, sign) / (2.0 * y0(lm, t, sign)); };
  return -params.hbar() * numerics::richardson_derivative(ratio, x, h);
}

double series_term(const LocalMomentum& lm, double x, const ScreeningParams& params, int n, Branch sign) {
  switch (n) {
    case 0: return y0(lm, x, sign);
    case 1: return y1(lm, x, params);
    case 2: return y2(lm, x, params, sign);
    case 3: return y3(lm, x, params, sign);
    default: throw UnsupportedOrderError("series terms exist for n = 0..3");
  }
}

SeriesTerms series_terms(const LocalMomentum& lm, double x, const ScreeningParams& params, Branch sign,
                         int max_order) {
  require_order(max_order, 0, 3, "series_terms");
  SeriesTerms t;
  t.x = x;
  t.sign_branch = sign;
  t.y0 = y0(lm, x, sign);
  t.y1 = max_order >= 1 ? y1(lm, x, params) : std::numeric_limits<double>::quiet_NaN();
  t.y2 = max_order >= 2 ? y2(lm, x, params, sign) : std::numeric_limits<double>::quiet_NaN();
  t.y3 = max_order >= 3 ? y3(lm, x, params, sign) : std::numeric_limits<double>::quiet_NaN();
  return t;
}

double recursion_defect(const LocalMomentum& lm, double x, const ScreeningParams& params, int n, Branch sign) {
  require_order(n, 1, 3, "recursion_defect");
  const double h = series_step(lm, x);
  auto previous = [&](double t) { return series_term(lm, t, params, n - 1, sign); };
  double defect = params.hbar() * numerics::richardson_derivative(previous, x, h);
  for (int m = 0; m <= n; ++m) {
    defect += series_term(lm, x, params, n - m, sign) * series_term(lm, x, params, m, sign);
  }
  return defect;
}

double recursion_term_scale(const LocalMomentum& lm, double x, const ScreeningParams& params, int n, Branch sign) {
  require_order(n, 1, 3, "recursion_term_scale");
  const double h = series_step(lm, x);
  auto previous = [&](double t) { return series_term(lm, t, params, n - 1, sign); };
  double scale = std::abs(params.hbar() * numerics::richardson_derivative(previous, x, h));
  for (int m = 0; m <= n; ++m) {
    scale = std::max(scale, std::abs(series_term(lm, x, params, n - m, sign) * series_term(lm, x, params, m, sign)));
  }
  return scale;
}

Complex series_sum(const LocalMomentum& lm, double x, const ScreeningParams& params, int order, Branch sign) {
  require_order(order, 0, 3, "series_sum");
  Complex sum = y0(lm, x, sign);
  for (int n = 1; n <= order; ++n) {
    sum += expansion_power(params.alpha(), n) * series_term(lm, x, params, n, sign);
  }
  return sum;
}

Complex riccati_residual(const LocalMomentum& lm, double x, const ScreeningParams& params, int order, Branch sign) {
  const double h = series_step(lm, x);
  auto y = [&](double t) { return series_sum(lm, t, params, order, sign); };
  const Complex yx = y(x);
  const Complex dy = numerics::richardson_derivative(y, x, h);
  const Complex quantum_scale(0.0, -effective_hbar(params));  // alpha hbar / i
  return quantum_scale * dy - lm.p_squared(x) + yx * yx;
}

double validity_metric(const LocalMomentum& lm, double x, const ScreeningParams& params) {
  if (!(lm.gap(x) > 0.0)) throw ForbiddenRegionError("validity_metric requires E > V");
  const double p = lm.p(x);
  return effective_hbar(params) * lm.mass() * std::abs(lm.potential().slope(x)) / (p * p * p);
}

double turning_point_exclusion(const LocalMomentum& lm, const ScreeningParams& params, double tp) {
  const Domain& d = lm.potential().domain();
  const double floor = 1e-6 * d.width();
  const double force = std::abs(lm.potential().slope(tp));
  if (force == 0.0) return floor;
  // The allowed side is downhill from the turning point.
  const double dir = lm.potential().slope(tp) > 0.0 ? -1.0 : 1.0;
  const double reach = dir > 0.0 ? d.hi - tp : tp - d.lo;
  const double mass = lm.mass();
  const double linear = std::pow(effective_hbar(params) * mass * force / 10.0, 2.0 / 3.0) / (2.0 * mass * force);

  auto excess = [&](double delta) {
    const double x = tp + dir * delta;
    if (!(lm.gap(x) > 0.0)) return std::numeric_limits<double>::infinity();
    return std::log(validity_metric(lm, x, params) / 10.0);
  };
  double lo = linear / 64.0;
  double hi = std::min(4.0 * linear, 0.5 * reach);
  double radius = linear;
  if (lo < hi && excess(lo) > 0.0) {
    for (int i = 0; i < 20 && excess(hi) > 0.0 && hi < 0.5 * reach; ++i) hi = std::min(2.0 * hi, 0.5 * reach);
    if (excess(hi) < 0.0) radius = numerics::find_root(excess, lo, hi, 1e-10, linear).root;
  }
  return std::max(floor, std::min(radius, reach));
}

void require_clear_interval(const LocalMomentum& lm, const ScreeningParams& params, double a, double b) {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  if (!(lm.gap(lo) > 0.0) || !(lm.gap(hi) > 0.0)) {
    throw NearTurningPointError("interval endpoints must lie in the classically allowed region");
  }
  for (double tp : lm.turning_points()) {
    const double eps = turning_point_exclusion(lm, params, tp);
    if (hi > tp - eps && lo < tp + eps) {
      throw NearTurningPointError("interval [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                  "] enters the excluded neighbourhood of the turning point at " + std::to_string(tp));
    }
  }
}

Complex phase_integral(const LocalMomentum& lm, double x_from, double x_to, const ScreeningParams& params, int order,
                       Branch sign) {
  require_order(order, 0, 3, "phase_integral");
  require_clear_interval(lm, params, x_from, x_to);
  auto integrand = [&](double x) { return series_sum(lm, x, params, order, sign); };
  return numerics::integrate(integrand, x_from, x_to, {1e-10, 1e-12});
}

}  // namespace swkb
