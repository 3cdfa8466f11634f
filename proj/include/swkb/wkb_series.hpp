#pragma once

#include <complex>
#include <vector>

#include "swkb/params.hpp"
#include "swkb/potentials.hpp"

namespace swkb {

using Complex = std::complex<double>;

/// Sign choice y0 = +p or y0 = -p.
enum class Branch { plus, minus };

inline double branch_sign(Branch b) noexcept { return b == Branch::plus ? 1.0 : -1.0; }

/// p(x) = sqrt(2 M (E - V(x))) for one energy. Holds a reference to the
/// potential, which must outlive it. Turning points of E are located once on
/// construction.
class LocalMomentum {
 public:
  LocalMomentum(const Potential& potential, double energy, double mass);
  LocalMomentum(const Potential& potential, double energy, const ScreeningParams& params)
      : LocalMomentum(potential, energy, params.mass_total()) {}

  const Potential& potential() const noexcept { return *potential_; }
  double energy() const noexcept { return energy_; }
  double mass() const noexcept { return mass_; }

  /// E - V(x).
  double gap(double x) const { return energy_ - potential_->value(x); }
  /// 2 M (E - V(x)), defined everywhere on the domain.
  double p_squared(double x) const { return 2.0 * mass_ * gap(x); }
  /// sqrt(2 M (E - V)); throws ForbiddenRegionError where E < V.
  double p(double x) const;
  /// sqrt(2 M (V - E)); throws ForbiddenRegionError where E > V.
  double kappa(double x) const;

  const std::vector<double>& turning_points() const noexcept { return turning_points_; }
  double distance_to_turning_point(double x) const noexcept;

 private:
  const Potential* potential_;
  double energy_;
  double mass_;
  std::vector<double> turning_points_;
};

/// Pointwise expansion terms at x. y3 is NaN when it was not requested or the
/// potential cannot supply it.
struct SeriesTerms {
  double x = 0.0;
  double y0 = 0.0;
  double y1 = 0.0;
  double y2 = 0.0;
  double y3 = 0.0;
  Branch sign_branch = Branch::plus;

  double term(int n) const;
};

double y0(const LocalMomentum& lm, double x, Branch sign);
double y1(const LocalMomentum& lm, double x, const ScreeningParams& params);
double y2(const LocalMomentum& lm, double x, const ScreeningParams& params, Branch sign);
/// -hbar d/dx [y2 / (2 y0)] by Richardson-extrapolated central differences.
double y3(const LocalMomentum& lm, double x, const ScreeningParams& params, Branch sign);

/// y_n for n in 0..3.
double series_term(const LocalMomentum& lm, double x, const ScreeningParams& params, int n, Branch sign);
SeriesTerms series_terms(const LocalMomentum& lm, double x, const ScreeningParams& params, Branch sign,
                         int max_order = 3);

/// Step used for every finite-difference derivative of the series at x:
/// 1e-4 * max(2(E-V)/|V'|, 1), capped by a tenth of the distance to the
/// nearest turning point, half the distance to the domain edge and half the
/// distance to a spline knot. Throws NearTurningPointError when it collapses.
double series_step(const LocalMomentum& lm, double x);

/// hbar y'_{n-1} + sum_{m=0}^{n} y_{n-m} y_m, n in 1..3. Near zero when the
/// closed forms satisfy the recursion.
double recursion_defect(const LocalMomentum& lm, double x, const ScreeningParams& params, int n, Branch sign);
/// Largest magnitude among the individual terms of recursion_defect.
double recursion_term_scale(const LocalMomentum& lm, double x, const ScreeningParams& params, int n, Branch sign);

/// sum_{n=0}^{order} (alpha/i)^n y_n(x).
Complex series_sum(const LocalMomentum& lm, double x, const ScreeningParams& params, int order, Branch sign);

/// (alpha hbar / i) y' - p^2 + y^2 for the truncated series; O(alpha^(order+1)).
Complex riccati_residual(const LocalMomentum& lm, double x, const ScreeningParams& params, int order, Branch sign);

/// alpha hbar M |V'| / p^3; small values mark where the two-term form is trusted.
double validity_metric(const LocalMomentum& lm, double x, const ScreeningParams& params);

/// Half-width of the excluded neighbourhood of turning point tp: the larger of
/// 1e-6 * domain width and the distance at which validity_metric reaches 10.
double turning_point_exclusion(const LocalMomentum& lm, const ScreeningParams& params, double tp);

/// Throws NearTurningPointError unless [a, b] lies in one classically allowed
/// region and keeps at least the exclusion radius away from every turning point.
void require_clear_interval(const LocalMomentum& lm, const ScreeningParams& params, double a, double b);

/// Integral of the truncated series from x_from to x_to (relative 1e-10,
/// absolute 1e-12).
Complex phase_integral(const LocalMomentum& lm, double x_from, double x_to, const ScreeningParams& params, int order,
                       Branch sign);

}  // namespace swkb
