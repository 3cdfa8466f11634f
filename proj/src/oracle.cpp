#include "swkb/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "swkb/errors.hpp"
#include "swkb/numerics.hpp"

namespace swkb {

namespace {

constexpr double kSeed = 1e-20;
constexpr double kOverflow = 1e200;

// Numerov weights f_i = 1 + h^2 k_i / 12 on the grid.
std::vector<double> numerov_weights(const Potential& potential, double energy, const ScreeningParams& params,
                                    const Grid& grid) {
  if (grid.points < 5) throw StepTooCoarseError("oracle grid needs at least 5 points");
  const double hb = effective_hbar(params);
  const double scale = 2.0 * params.mass_total() / (hb * hb);
  const double h = grid.step();
  std::vector<double> f(grid.points);
  double worst = 0.0;
  for (int i = 0; i < grid.points; ++i) {
    const double k = scale * (energy - potential.value(grid.x(i)));
    worst = std::max(worst, std::abs(k) * h * h);
    f[i] = 1.0 + h * h * k / 12.0;
  }
  if (worst >= 1.0) {
    throw StepTooCoarseError("Numerov step too coarse: max |k| h^2 = " + std::to_string(worst));
  }
  return f;
}

// Integrates over indices [first, last] in the given direction; entries outside
// the range are left at zero.
NumerovSweep sweep_range(const std::vector<double>& f, int first, int last, SweepDirection direction) {
  const int n = static_cast<int>(f.size());
  NumerovSweep out;
  out.psi.assign(n, 0.0);
  auto& psi = out.psi;
  const int dir = direction == SweepDirection::left_to_right ? 1 : -1;
  const int start = direction == SweepDirection::left_to_right ? first : last;
  const int stop = direction == SweepDirection::left_to_right ? last : first;
  psi[start] = 0.0;
  psi[start + dir] = kSeed;
  for (int i = start + dir; i != stop; i += dir) {
    const double next = ((12.0 - 10.0 * f[i]) * psi[i] - f[i - dir] * psi[i - dir]) / f[i + dir];
    psi[i + dir] = next;
    if (std::abs(next) > kOverflow) {
      for (int j = start; j != i + 2 * dir; j += dir) psi[j] /= kOverflow;
      out.rescale_indices.push_back(i + dir);
      out.log_scale += std::log(kOverflow);
    }
  }
  return out;
}

int sign_changes(const std::vector<double>& psi, int first, int last) {
  int count = 0;
  double previous = 0.0;
  for (int i = first; i <= last; ++i) {
    if (psi[i] == 0.0) continue;
    if (previous != 0.0 && ((psi[i] > 0.0) != (previous > 0.0))) ++count;
    previous = psi[i];
  }
  return count;
}

struct Shooter {
  const Potential& potential;
  const ScreeningParams& params;
  const Grid& grid;

  // Number of discrete eigenvalues below energy (Sturm count of the left shot).
  int count(double energy) const {
    const auto f = numerov_weights(potential, energy, params, grid);
    const auto shot = sweep_range(f, 0, grid.points - 1, SweepDirection::left_to_right);
    return sign_changes(shot.psi, 1, grid.points - 1);
  }

  // sin of the angle between (z_m, z_{m+1}) of the two shots, z_i = f_i psi_i.
  // The Numerov recursion conserves the Casoratian, so this vanishes exactly at
  // a discrete eigenvalue.
  double mismatch(double energy, int m) const {
    const auto f = numerov_weights(potential, energy, params, grid);
    const auto left = sweep_range(f, 0, m + 1, SweepDirection::left_to_right);
    const auto right = sweep_range(f, m, grid.points - 1, SweepDirection::right_to_left);
    const double l0 = f[m] * left.psi[m], l1 = f[m + 1] * left.psi[m + 1];
    const double r0 = f[m] * right.psi[m], r1 = f[m + 1] * right.psi[m + 1];
    return (l0 * r1 - l1 * r0) / (std::hypot(l0, l1) * std::hypot(r0, r1));
  }
};

int choose_match_index(const Potential& potential, const ScreeningParams& params, const Grid& grid, double energy) {
  const int lo = std::max(2, grid.points / 10);
  const int hi = std::min(grid.points - 3, grid.points - grid.points / 10);
  const double hb = effective_hbar(params);
  const double mass = params.mass_total();
  int best = -1;
  double best_metric = std::numeric_limits<double>::infinity();
  for (int i = lo; i <= hi; ++i) {
    const double x = grid.x(i);
    const double gap = energy - potential.value(x);
    if (gap <= 0.0) continue;
    const double p = std::sqrt(2.0 * mass * gap);
    const double metric = hb * mass * std::abs(potential.slope(x)) / (p * p * p);
    if (metric < best_metric) {
      best_metric = metric;
      best = i;
    }
  }
  if (best < 0) {
    // No allowed point in the central window: fall back to the deepest point.
    double best_gap = -std::numeric_limits<double>::infinity();
    for (int i = 2; i <= grid.points - 3; ++i) {
      const double gap = energy - potential.value(grid.x(i));
      if (gap > best_gap) {
        best_gap = gap;
        best = i;
      }
    }
  }
  return best;
}

}  // namespace

NumerovSweep numerov_sweep(const Potential& potential, double energy, const ScreeningParams& params, const Grid& grid,
                           SweepDirection direction) {
  const auto f = numerov_weights(potential, energy, params, grid);
  return sweep_range(f, 0, grid.points - 1, direction);
}

int node_count(std::span<const double> psi) {
  double peak = 0.0;
  for (double v : psi) peak = std::max(peak, std::abs(v));
  const double floor = 1e-12 * peak;
  int count = 0;
  int previous = 0;
  for (double v : psi) {
    if (std::abs(v) <= floor) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (previous != 0 && s != previous) ++count;
    previous = s;
  }
  return count;
}

double overlap(std::span<const double> a, std::span<const double> b, double step) {
  const std::size_t n = std::min(a.size(), b.size());
  if (n < 2) return 0.0;
  double sum = 0.5 * (a[0] * b[0] + a[n - 1] * b[n - 1]);
  for (std::size_t i = 1; i + 1 < n; ++i) sum += a[i] * b[i];
  return sum * step;
}

SolverReport eigenvalue_solve(const Potential& potential, int n, const ScreeningParams& params, const Grid& grid) {
  if (n < 0) throw DomainError("quantum number must be non-negative");
  const Domain& d = potential.domain();
  if (grid.x_min < d.lo || grid.x_max > d.hi || !(grid.x_max > grid.x_min)) {
    throw DomainError("oracle grid must lie inside the potential domain");
  }
  Shooter shooter{potential, params, grid};
  int iterations = 0;

  double v_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.points; ++i) v_min = std::min(v_min, potential.value(grid.x(i)));
  const double ceiling = potential.has_hard_wall() && grid.x_min == d.lo
                             ? potential.value(grid.x_max)
                             : std::min(potential.value(grid.x_min), potential.value(grid.x_max));
  if (!(ceiling > v_min)) throw NoBoundStateError("potential is not confining on the oracle grid");

  // Upward expansion until the level is below the trial energy.
  double lo = v_min;
  double width = (ceiling - v_min) * 1e-4;
  double hi = v_min + width;
  while (shooter.count(hi) < n + 1) {
    ++iterations;
    lo = hi;
    width *= 2.0;
    hi = v_min + width;
    if (hi > ceiling) {
      hi = ceiling;
      if (shooter.count(hi) < n + 1) {
        throw NoBoundStateError("level n = " + std::to_string(n) + " lies above the confinement ceiling");
      }
      break;
    }
  }
  // Bisect on the count until [lo, hi] isolates level n.
  int count_lo = shooter.count(lo);
  int count_hi = shooter.count(hi);
  for (int guard = 0; !(count_lo == n && count_hi == n + 1); ++guard) {
    if (guard > 200) throw ConvergenceError("node-count bisection did not isolate level " + std::to_string(n));
    ++iterations;
    const double mid = 0.5 * (lo + hi);
    const int c = shooter.count(mid);
    if (c <= n) {
      lo = mid;
      count_lo = c;
    } else {
      hi = mid;
      count_hi = c;
    }
  }

  const int m = choose_match_index(potential, params, grid, 0.5 * (lo + hi));
  auto mismatch = [&](double e) { return shooter.mismatch(e, m); };
  double m_lo = mismatch(lo);
  double m_hi = mismatch(hi);
  // Rare: a sign pattern hidden by the bracket ends; shrink by count bisection.
  for (int guard = 0; (m_lo > 0.0) == (m_hi > 0.0); ++guard) {
    if (guard > 60) throw ConvergenceError("shooting mismatch does not change sign across the level bracket");
    const double mid = 0.5 * (lo + hi);
    if (shooter.count(mid) <= n) {
      lo = mid;
      m_lo = mismatch(lo);
    } else {
      hi = mid;
      m_hi = mismatch(hi);
    }
    ++iterations;
  }
  const double energy_scale = std::abs(lo - v_min) + std::abs(hi - v_min);
  const auto root = numerics::find_root(mismatch, lo, hi, 1e-14, energy_scale);
  iterations += root.iterations;
  const double energy = root.root;

  // Glue the two shots at the match point and normalise.
  const auto f = numerov_weights(potential, energy, params, grid);
  const auto left = sweep_range(f, 0, m + 1, SweepDirection::left_to_right);
  const auto right = sweep_range(f, m, grid.points - 1, SweepDirection::right_to_left);
  const double factor = (left.psi[m] * right.psi[m] + left.psi[m + 1] * right.psi[m + 1]) /
                        (right.psi[m] * right.psi[m] + right.psi[m + 1] * right.psi[m + 1]);
  std::vector<double> psi(grid.points);
  for (int i = 0; i < grid.points; ++i) psi[i] = i <= m ? left.psi[i] : factor * right.psi[i];
  const double norm = std::sqrt(overlap(psi, psi, grid.step()));
  double peak = 0.0;
  for (double v : psi) peak = std::max(peak, std::abs(v));
  double sign = 1.0;
  for (double v : psi) {
    if (std::abs(v) > 1e-3 * peak) {
      sign = v > 0.0 ? 1.0 : -1.0;
      break;
    }
  }
  for (double& v : psi) v *= sign / norm;

  SolverReport report;
  report.energy = energy;
  report.grid = grid;
  report.psi = std::move(psi);
  report.n_nodes = node_count(report.psi);
  report.match_defect = std::abs(mismatch(energy));
  report.match_index = m;
  report.iterations = iterations;
  if (report.n_nodes != n) {
    throw ConvergenceError("glued oracle state has " + std::to_string(report.n_nodes) + " nodes, expected " +
                           std::to_string(n));
  }
  return report;
}

Grid oracle_grid(const Potential& potential, const ScreeningParams& params, double energy_ref, int points) {
  const Domain& d = potential.domain();
  const auto tps = turning_points(potential, energy_ref);
  const double hb = effective_hbar(params);
  const double mass = params.mass_total();
  auto kappa = [&](double x) {
    const double g = potential.value(x) - energy_ref;
    return g > 0.0 ? std::sqrt(2.0 * mass * g) / hb : 0.0;
  };
  // March outward from x0 until the accumulated decay exponent reaches the target.
  auto tail_end = [&](double x0, double edge) {
    const int steps = 20000;
    const double dx = (edge - x0) / steps;
    double exponent = 0.0;
    double previous = kappa(x0);
    for (int i = 1; i <= steps; ++i) {
      const double x = i == steps ? edge : x0 + i * dx;
      const double current = kappa(x);
      exponent += 0.5 * (previous + current) * std::abs(dx);
      previous = current;
      if (exponent >= kTailExponent) return x;
    }
    return edge;
  };
  double lo = d.lo;
  double hi = d.hi;
  if (!tps.empty()) {
    if (!potential.has_hard_wall()) lo = tail_end(tps.front(), d.lo);
    hi = tail_end(tps.back(), d.hi);
  }
  return Grid{lo, hi, points};
}

RefinedEigenvalue refined_eigenvalue(const Potential& potential, int n, const ScreeningParams& params,
                                     const Grid& grid) {
  const SolverReport coarse = eigenvalue_solve(potential, n, params, grid);
  SolverReport fine = eigenvalue_solve(potential, n, params, grid.refined());
  RefinedEigenvalue out{fine.energy + (fine.energy - coarse.energy) / 15.0, coarse.energy, fine.energy, {}};
  out.report = std::move(fine);
  return out;
}

}  // namespace swkb
