#pragma once

namespace swkb {

/// Reduced Planck constant in SI units (J s).
inline constexpr double kHbarSI = 1.05457e-34;

/// Physical configuration of a computation: the screening parameter alpha = m/M,
/// the total mass M and hbar. Validated on construction, immutable afterwards.
class ScreeningParams {
 public:
  /// Throws DomainError unless 0 < alpha <= 1, mass_total > 0 and hbar > 0.
  explicit ScreeningParams(double alpha, double mass_total = 1.0, double hbar = 1.0);

  double alpha() const noexcept { return alpha_; }
  double mass_total() const noexcept { return mass_total_; }
  double hbar() const noexcept { return hbar_; }

  /// Mass of the effective screening layer, m = alpha * M.
  double screening_mass() const noexcept { return alpha_ * mass_total_; }

  ScreeningParams with_alpha(double alpha) const { return ScreeningParams(alpha, mass_total_, hbar_); }

  friend bool operator==(const ScreeningParams&, const ScreeningParams&) = default;

 private:
  double alpha_;
  double mass_total_;
  double hbar_;
};

/// alpha * hbar, the quantum of action that replaces hbar everywhere.
double effective_hbar(const ScreeningParams& params) noexcept;

/// Radial fraction r_m/r_M = 1 - (1 - alpha)^(1/3) of the screening layer of a
/// sphere. Accepts alpha in [0, 1]; throws DomainError otherwise.
double screening_size(double alpha);

/// Lower bound alpha * hbar / 2 of the scaled uncertainty product.
double uncertainty_bound(const ScreeningParams& params) noexcept;

}  // namespace swkb
