#pragma once

#include <filesystem>
#include <memory>
#include <string_view>
#include <variant>
#include <vector>

namespace swkb {

struct Domain {
  double lo;
  double hi;

  double width() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return x >= lo && x <= hi; }
};

/// V = M omega^2 (x - center)^2 / 2. The oscillator mass is part of the shape.
struct Harmonic {
  double omega;
  double center = 0.0;
  double mass = 1.0;
};

/// V = force * x. With hard_wall set, the lower domain bound is an
/// impenetrable wall (the "quantum bouncer").
struct Linear {
  double force;
  bool hard_wall = false;
};

/// V = lambda x^4.
struct Quartic {
  double lambda;
};

/// V = depth (1 - exp(-width (x - center)))^2.
struct Morse {
  double depth;
  double width;
  double center = 0.0;
};

/// Not-a-knot cubic spline through (x, v) samples.
struct Tabulated {
  std::vector<double> x;
  std::vector<double> v;
};

using PotentialKind = std::variant<Harmonic, Linear, Quartic, Morse, Tabulated>;

/// One-dimensional potential with derivatives up to order 3 (order 2 for
/// tabulated data) on a closed domain. Immutable after construction.
class Potential {
 public:
  static Potential harmonic(double omega, double center, double mass, Domain domain);
  static Potential linear(double force, bool hard_wall, Domain domain);
  static Potential quartic(double lambda, Domain domain);
  static Potential morse(double depth, double width, double center, Domain domain);
  /// Domain is [x.front(), x.back()]. Needs >= 4 strictly increasing samples.
  static Potential tabulated(std::vector<double> x, std::vector<double> v);
  /// Two-column (x, V) CSV; lines starting with '#' or a non-numeric token are skipped.
  static Potential tabulated_from_csv(const std::filesystem::path& path);

  /// k-th derivative of V at x, k in 0..3. Throws DomainError outside the
  /// domain and UnsupportedOrderError for k = 3 on tabulated data.
  double eval(double x, int derivative_order = 0) const;
  double value(double x) const { return eval(x, 0); }
  double slope(double x) const { return eval(x, 1); }
  double curvature(double x) const { return eval(x, 2); }

  const Domain& domain() const noexcept { return domain_; }
  const PotentialKind& kind() const noexcept { return kind_; }
  std::string_view kind_name() const noexcept;
  int max_derivative_order() const noexcept;
  bool is_tabulated() const noexcept { return std::holds_alternative<Tabulated>(kind_); }
  /// True when the lower domain bound is a hard wall.
  bool has_hard_wall() const noexcept;

  /// Location and value of the global minimum of V on the domain.
  double minimum_location() const noexcept { return min_x_; }
  double minimum_value() const noexcept { return min_v_; }

  /// Distance from x to the nearest interior spline knot (infinite for
  /// analytic kinds). Finite-difference steps must not straddle a knot.
  double distance_to_knot(double x) const noexcept;

 private:
  struct Spline;

  Potential(PotentialKind kind, Domain domain);
  void locate_minimum();
  double eval_unchecked(double x, int order) const;

  PotentialKind kind_;
  Domain domain_;
  std::shared_ptr<const Spline> spline_;
  double min_x_ = 0.0;
  double min_v_ = 0.0;
};

/// Number of uniform samples scanned for sign changes of E - V.
inline constexpr int kTurningPointScan = 2048;

/// All roots of E - V(x) = 0 in the domain, ascending, refined to relative
/// 1e-12. Empty when E is below the minimum or no sign change exists. A hard
/// wall is not a root.
std::vector<double> turning_points(const Potential& potential, double energy);

}  // namespace swkb
