#pragma once

#include <span>
#include <string>
#include <vector>

#include "swkb/params.hpp"
#include "swkb/potentials.hpp"

namespace swkb {

/// Uniform grid x_i = x_min + i h, i = 0..points-1.
struct Grid {
  double x_min = 0.0;
  double x_max = 1.0;
  int points = 8001;

  double step() const noexcept { return (x_max - x_min) / (points - 1); }
  double x(int i) const noexcept { return i == points - 1 ? x_max : x_min + i * step(); }
  /// Same interval with the step halved.
  Grid refined() const noexcept { return Grid{x_min, x_max, 2 * points - 1}; }
};

inline constexpr int kDefaultOraclePoints = 8001;

/// Decay exponent (integral of |p| / (alpha hbar)) the oracle grid keeps beyond
/// the outermost turning points.
inline constexpr double kTailExponent = 30.0;

enum class SweepDirection { left_to_right, right_to_left };

struct NumerovSweep {
  std::vector<double> psi;
  /// Indices at which the already computed samples were scaled down to avoid
  /// overflow, and the accumulated natural log of the discarded factor.
  std::vector<int> rescale_indices;
  double log_scale = 0.0;
};

/// Numerov integration of psi'' = -k psi, k = 2M (E - V) / (alpha hbar)^2, from
/// (0, tiny seed) at the starting boundary. Throws StepTooCoarseError when
/// max |k| h^2 >= 1.
NumerovSweep numerov_sweep(const Potential& potential, double energy, const ScreeningParams& params, const Grid& grid,
                           SweepDirection direction);

struct SolverReport {
  double energy = 0.0;
  int n_nodes = 0;
  Grid grid;
  std::vector<double> psi;  // unit norm under the trapezoidal rule
  double match_defect = 0.0;
  int match_index = 0;
  int iterations = 0;
};

/// Bound state with n nodes: node-count bisection to isolate the level, then
/// the normalised Casoratian mismatch of the two shooting solutions at the
/// match point is driven to zero.
SolverReport eigenvalue_solve(const Potential& potential, int n, const ScreeningParams& params, const Grid& grid);

/// Strict sign changes, ignoring samples below 1e-12 of the peak magnitude.
int node_count(std::span<const double> psi);

/// Grid spanning the outermost turning points of energy_ref plus tails with
/// decay exponent kTailExponent, clipped to the potential domain.
Grid oracle_grid(const Potential& potential, const ScreeningParams& params, double energy_ref,
                 int points = kDefaultOraclePoints);

/// Eigenvalue on grid and grid.refined(), combined by Richardson extrapolation
/// for the O(h^4) Numerov error.
struct RefinedEigenvalue {
  double energy;
  double coarse;
  double fine;
  SolverReport report;  // the fine-grid solve
};

RefinedEigenvalue refined_eigenvalue(const Potential& potential, int n, const ScreeningParams& params,
                                     const Grid& grid);

/// Trapezoidal inner product of two samplings on the same uniform grid.
double overlap(std::span<const double> a, std::span<const double> b, double step);

}  // namespace swkb
