#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "swkb/airy.hpp"
#include "swkb/wkb_series.hpp"

namespace swkb {

enum class RegionKind { allowed, forbidden, connection };

std::string_view to_string(RegionKind kind) noexcept;

/// One piece of a WKB wavefunction. In allowed regions
///   psi = C1/sqrt(p) exp(+i Phi) + C2/sqrt(p) exp(-i Phi),  Phi = (1/(alpha hbar)) int_anchor^x p dx,
/// in forbidden regions
///   psi = C1/sqrt(|p|) exp(+I) + C2/sqrt(|p|) exp(-I),  I = (1/(alpha hbar)) |int_anchor^x |p| dx|,
/// so C2 is the part decaying away from the allowed region. Connection regions
/// are centred on turning points and carry the Airy matching amplitude in c1.
struct Region {
  double lo;
  double hi;
  RegionKind kind;
  Complex c1;
  Complex c2;
  double anchor;
  int turning_point = -1;  // index into WkbWavefunction::turning_points(), connection regions only
};

/// Two-term WKB wavefunction assembled region by region. Keeps a reference to
/// the potential.
class WkbWavefunction {
 public:
  /// Bound state at energy E: decaying tails, connection at each smooth
  /// turning point, a Dirichlet wall when the potential has one. With
  /// normalize set, the decaying amplitude is 1/sqrt(2 int dx/p) so that the
  /// allowed-region standing wave has unit norm on average.
  static WkbWavefunction bound_state(const Potential& potential, double energy, const ScreeningParams& params,
                                     bool normalize = true);

  /// Arbitrary region layout (used for free particles and tests).
  WkbWavefunction(const Potential& potential, double energy, const ScreeningParams& params,
                  std::vector<Region> regions);

  double energy() const noexcept { return energy_; }
  const ScreeningParams& params() const noexcept { return params_; }
  const Potential& potential() const noexcept { return momentum_.potential(); }
  const LocalMomentum& momentum() const noexcept { return momentum_; }
  const std::vector<Region>& regions() const noexcept { return regions_; }
  const std::vector<double>& turning_points() const noexcept { return momentum_.turning_points(); }
  /// Amplitude D of the decaying tail on the left (index 0) and right side.
  double decay_amplitude(int side) const noexcept { return decay_amplitude_[side]; }
  /// Magnitude of the growing right-hand tail discarded during assembly; zero
  /// when E satisfies the mu = 1/2 quantization condition exactly.
  double discarded_growth() const noexcept { return discarded_growth_; }

  const Region& region_at(double x) const;

 private:
  LocalMomentum momentum_;
  double energy_;
  ScreeningParams params_;
  std::vector<Region> regions_;
  std::array<double, 2> decay_amplitude_{0.0, 0.0};
  double discarded_growth_ = 0.0;
};

/// Piecewise WKB value at x. Throws UseUniformError inside a connection region.
Complex evaluate(const WkbWavefunction& wf, double x);

/// evaluate() outside connection regions, the matched Airy form inside.
Complex evaluate_with_uniform(const WkbWavefunction& wf, double x);

/// |int_a^b V'/(4(E - V)) dx + (log p(b) - log p(a)) / 2|.
double amplitude_identity_defect(const LocalMomentum& lm, double x_from, double x_to);

/// amplitude * Ai(s), s = (2 M |F| / (alpha hbar)^2)^(1/3) sign(F) (x - tp),
/// F = V'(tp): the solution of the equation with V linearised at tp that
/// decays into the forbidden side.
double uniform_wavefunction(const Potential& potential, double energy, const ScreeningParams& params, double tp,
                            double x, double amplitude = 1.0);

/// Airy argument s used by uniform_wavefunction.
double uniform_argument(const Potential& potential, const ScreeningParams& params, double tp, double x);

/// Amplitude A for which A Ai(s) matches a decaying tail of WKB amplitude D.
double uniform_amplitude(const Potential& potential, const ScreeningParams& params, double tp, double decay);

enum class AllowedSide { left, right };

/// Linear map from forbidden-side coefficients (C1 growing, C2 decaying) to
/// allowed-side (C1, C2), with both phase integrals anchored at the turning
/// point. Decaying input D maps to 2D/sqrt(p) cos(Phi - pi/4).
struct TransferMap {
  std::array<std::array<Complex, 2>, 2> m;

  std::array<Complex, 2> apply(const std::array<Complex, 2>& v) const;
  TransferMap inverse() const;
};

TransferMap connect_at_turning_point(AllowedSide side);

/// Phase (1/(alpha hbar)) int_from^to p dx with `from` allowed to be a turning
/// point; the square-root end is removed by substitution.
double momentum_phase(const LocalMomentum& lm, const ScreeningParams& params, double turning_point, double x);
/// (1/(alpha hbar)) int |p| dx from a turning point out to x in a forbidden region.
double decay_exponent(const LocalMomentum& lm, const ScreeningParams& params, double turning_point, double x);

}  // namespace swkb
