#include "swkb/params.hpp"

#include <cmath>
#include <string>

#include "swkb/errors.hpp"

namespace swkb {

ScreeningParams::ScreeningParams(double alpha, double mass_total, double hbar)
    : alpha_(alpha), mass_total_(mass_total), hbar_(hbar) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("screening parameter alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
  if (!(mass_total > 0.0) || !std::isfinite(mass_total)) {
    throw DomainError("total mass must be positive");
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw DomainError("hbar must be positive");
  }
}

double effective_hbar(const ScreeningParams& params) noexcept { return params.alpha() * params.hbar(); }

double screening_size(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError("screening_size: alpha must lie in [0, 1]");
  }
  return 1.0 - std::cbrt(1.0 - alpha);
}

double uncertainty_bound(const ScreeningParams& params) noexcept { return 0.5 * params.alpha() * params.hbar(); }

}  // namespace swkb
