#pragma once

#include <vector>

#include "swkb/wkb_series.hpp"

namespace swkb {

/// Hamilton-Jacobi action int_{x_from}^{x_to} sqrt(2M(E - V)) dx. Endpoints may
/// sit on turning points; throws DomainError if the interval leaves the
/// allowed region.
double action_s0(const Potential& potential, double energy, double mass, double x_from, double x_to);

/// S'^2 + (alpha hbar / i) S'' - 2M(E - V) with S' the truncated series of the
/// given order and S'' its finite-difference derivative.
Complex hj_defect(const Potential& potential, double energy, const ScreeningParams& params, double x, int order);

struct LimitScan {
  std::vector<double> alphas;          // strictly decreasing
  std::vector<double> deviations;      // |S_alpha - S_0|, clamped at kDeviationFloor
  std::vector<double> re_deviations;   // |Re S_alpha - S_0|
  std::vector<double> im_deviations;   // |Im S_alpha|
  std::vector<bool> clamped;
  bool slope_computed = false;  // false when fewer than kMinRegressionPoints survive the floor
  double fitted_slope = 0.0;    // NaN unless slope_computed
  double intercept = 0.0;       // natural log units
  double x_from = 0.0;
  double x_to = 0.0;
  double energy = 0.0;
};

inline constexpr double kDeviationFloor = 1e-14;
inline constexpr int kMinRegressionPoints = 5;

/// Least-squares slope of log y against log x.
struct PowerLawFit {
  double slope;
  double intercept;
};
PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

/// |S_alpha - S_0| over [x_from, x_to] for each alpha, with S_alpha the
/// order-3 phase integral; mass and hbar come from `base`. Throws DomainError
/// for a bad alpha list. The slope is left uncomputed when fewer than
/// kMinRegressionPoints deviations clear the floor.
LimitScan convergence_scan(const Potential& potential, double energy, const ScreeningParams& base, double x_from,
                           double x_to, const std::vector<double>& alphas);

/// n values log-spaced from hi down to lo.
std::vector<double> log_spaced_alphas(double hi, double lo, int n);

}  // namespace swkb
