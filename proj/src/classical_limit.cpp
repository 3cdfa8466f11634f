#include "swkb/classical_limit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "swkb/errors.hpp"
#include "swkb/numerics.hpp"

namespace swkb {

double action_s0(const Potential& potential, double energy, double mass, double x_from, double x_to) {
  if (x_from == x_to) return 0.0;
  const LocalMomentum lm(potential, energy, mass);
  const double lo = std::min(x_from, x_to);
  const double hi = std::max(x_from, x_to);
  const double slack = 1e-12 * std::max(std::abs(energy), 1.0);
  if (lm.gap(lo) < -slack || lm.gap(hi) < -slack) {
    throw DomainError("action_s0 interval leaves the classically allowed region");
  }
  const double width = hi - lo;
  for (double tp : lm.turning_points()) {
    if (tp > lo + 1e-12 * width && tp < hi - 1e-12 * width) {
      throw DomainError("action_s0 interval crosses the turning point at " + std::to_string(tp));
    }
  }
  // x = mid + half sin(theta) smooths square-root zeros of p at either end.
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * width;
  auto integrand = [&](double t) {
    const double x = std::clamp(mid + half * std::sin(t), lo, hi);
    return std::sqrt(std::max(lm.p_squared(x), 0.0)) * half * std::cos(t);
  };
  const double s = numerics::integrate(integrand, -0.5 * std::numbers::pi, 0.5 * std::numbers::pi, {1e-12, 0.0});
  return x_to > x_from ? s : -s;
}

Complex hj_defect(const Potential& potential, double energy, const ScreeningParams& params, double x, int order) {
  // With y = S' the deformed action equation is the Riccati equation for y.
  const LocalMomentum lm(potential, energy, params);
  return riccati_residual(lm, x, params, order, Branch::plus);
}

PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw DomainError("power-law fit needs at least two matching points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw DomainError("power-law fit needs distinct abscissae");
  const double slope = (n * sxy - sx * sy) / denom;
  return {slope, (sy - slope * sx) / n};
}

LimitScan convergence_scan(const Potential& potential, double energy, const ScreeningParams& base, double x_from,
                           double x_to, const std::vector<double>& alphas) {
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0 && alphas[i] <= 1.0)) throw DomainError("scan alphas must lie in (0, 1]");
    if (i > 0 && !(alphas[i] < alphas[i - 1])) throw DomainError("scan alphas must be strictly decreasing");
  }
  LimitScan scan;
  scan.alphas = alphas;
  scan.x_from = x_from;
  scan.x_to = x_to;
  scan.energy = energy;
  const double s0 = action_s0(potential, energy, base.mass_total(), x_from, x_to);
  const LocalMomentum lm(potential, energy, base);

  std::vector<double> fit_x;
  std::vector<double> fit_y;
  for (double alpha : alphas) {
    const ScreeningParams params = base.with_alpha(alpha);
    const Complex s = phase_integral(lm, x_from, x_to, params, 3, Branch::plus);
    const double dev = std::abs(s - s0);
    scan.re_deviations.push_back(std::abs(s.real() - s0));
    scan.im_deviations.push_back(std::abs(s.imag()));
    const bool low = dev < kDeviationFloor;
    scan.clamped.push_back(low);
    scan.deviations.push_back(low ? kDeviationFloor : dev);
    if (!low) {
      fit_x.push_back(alpha);
      fit_y.push_back(dev);
    }
  }
  if (static_cast<int>(fit_x.size()) < kMinRegressionPoints) {
    scan.fitted_slope = std::numeric_limits<double>::quiet_NaN();
    scan.intercept = std::numeric_limits<double>::quiet_NaN();
    return scan;
  }
  const PowerLawFit fit = fit_power_law(fit_x, fit_y);
  scan.slope_computed = true;
  scan.fitted_slope = fit.slope;
  scan.intercept = fit.intercept;
  return scan;
}

std::vector<double> log_spaced_alphas(double hi, double lo, int n) {
  if (n < 2 || !(hi > lo) || !(lo > 0.0)) throw DomainError("log_spaced_alphas needs n >= 2 and hi > lo > 0");
  std::vector<double> out(n);
  const double step = std::log(lo / hi) / (n - 1);
  for (int i = 0; i < n; ++i) out[i] = hi * std::exp(step * i);
  out.back() = lo;
  return out;
}

}  // namespace swkb
