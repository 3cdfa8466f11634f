#include <doctest.h>

#include <cmath>
#include <numbers>

#include "swkb/airy.hpp"
#include "swkb/errors.hpp"
#include "swkb/oracle.hpp"

using namespace swkb;

namespace {

Potential flat(double lo, double hi) { return Potential::tabulated({lo, lo + 1, hi - 1, hi}, {0, 0, 0, 0}); }

double sine_error(int points) {
  const auto pot = flat(0.0, 10.0);
  const Grid grid{0.0, 10.0, points};
  const auto sweep = numerov_sweep(pot, 0.5, ScreeningParams(1.0), grid, SweepDirection::left_to_right);
  const double c = sweep.psi[1] / std::sin(grid.step());
  double err = 0.0;
  for (int i = 0; i < points; ++i) err = std::max(err, std::abs(sweep.psi[i] / c - std::sin(grid.x(i))));
  return err;
}

}  // namespace

TEST_CASE("free particle sweep converges at fourth order") {
  const double ratio = sine_error(201) / sine_error(401);
  CHECK(ratio == doctest::Approx(16.0).epsilon(0.3));
}

TEST_CASE("linear potential sweep reproduces Ai") {
  const auto pot = Potential::linear(1.0, false, {-10, 8});
  const Grid grid{-10.0, 8.0, 36001};
  const auto sweep = numerov_sweep(pot, 0.0, ScreeningParams(1.0, 0.5), grid, SweepDirection::right_to_left);
  double num = 0.0, den = 0.0, peak = 0.0;
  std::vector<int> idx;
  for (int i = 0; i < grid.points; ++i) {
    const double x = grid.x(i);
    if (x < -8.0 || x > 3.0) continue;
    idx.push_back(i);
    num += sweep.psi[i] * airy_ai(x);
    den += airy_ai(x) * airy_ai(x);
    peak = std::max(peak, std::abs(airy_ai(x)));
  }
  const double c = num / den;
  double err = 0.0;
  for (int i : idx) err = std::max(err, std::abs(sweep.psi[i] / c - airy_ai(grid.x(i))));
  CHECK(err / peak <= 1e-6);
}

TEST_CASE("alpha enters only through alpha * hbar") {
  const auto pot = Potential::harmonic(1.0, 0.0, 1.0, {-8, 8});
  const Grid grid{-8.0, 8.0, 2001};
  const auto a = numerov_sweep(pot, 0.7, ScreeningParams(0.5, 1.0, 1.0), grid, SweepDirection::left_to_right);
  const auto b = numerov_sweep(pot, 0.7, ScreeningParams(1.0, 1.0, 0.5), grid, SweepDirection::left_to_right);
  CHECK(a.psi == b.psi);
  const auto ea = eigenvalue_solve(pot, 2, ScreeningParams(0.5, 1.0, 1.0), grid);
  const auto eb = eigenvalue_solve(pot, 2, ScreeningParams(1.0, 1.0, 0.5), grid);
  CHECK(ea.energy == eb.energy);
}

TEST_CASE("coarse grid is rejected") {
  const auto pot = Potential::harmonic(1.0, 0.0, 1.0, {-15, 15});
  CHECK_THROWS_AS(numerov_sweep(pot, 100.0, ScreeningParams(0.1), Grid{-15, 15, 11}, SweepDirection::left_to_right),
                  StepTooCoarseError);
}

TEST_CASE("harmonic eigenvalues") {
  const auto pot = Potential::harmonic(1.0, 0.0, 1.0, {-15, 15});
  const ScreeningParams unit(1.0);
  const auto e0 = refined_eigenvalue(pot, 0, unit, oracle_grid(pot, unit, 0.5));
  CHECK(std::abs(e0.energy - 0.5) <= 1e-8);

  const ScreeningParams tenth(0.1);
  const auto e3 = refined_eigenvalue(pot, 3, tenth, oracle_grid(pot, tenth, 0.35));
  CHECK(e3.energy == doctest::Approx(0.35).epsilon(1e-8));

  const ScreeningParams half(0.5);
  const auto e2 = refined_eigenvalue(pot, 2, unit, oracle_grid(pot, unit, 2.5));
  const auto e2h = refined_eigenvalue(pot, 2, half, oracle_grid(pot, half, 1.25));
  CHECK(e2h.energy == doctest::Approx(0.5 * e2.energy).epsilon(1e-8));
}

TEST_CASE("quantum bouncer ground level is the first Airy zero") {
  const auto pot = Potential::linear(1.0, true, {0, 40});
  const ScreeningParams p(1.0, 0.5);
  const auto e = refined_eigenvalue(pot, 0, p, oracle_grid(pot, p, 2.3));
  CHECK(std::abs(e.energy + airy_ai_zero(1)) <= 1e-8);
  CHECK(std::abs(e.energy - 2.338107) <= 5e-7);
  CHECK(e.report.n_nodes == 0);
}

TEST_CASE("eigenstates are orthonormal with the right node counts") {
  const auto pot = Potential::quartic(1.0, {-4, 4});
  const ScreeningParams p(1.0);
  const Grid grid{-4.0, 4.0, 8001};
  std::vector<SolverReport> states;
  for (int n = 0; n <= 4; ++n) {
    states.push_back(eigenvalue_solve(pot, n, p, grid));
    CHECK(states.back().n_nodes == n);
    CHECK(node_count(states.back().psi) == n);
    CHECK(overlap(states.back().psi, states.back().psi, grid.step()) == doctest::Approx(1.0).epsilon(1e-12));
  }
  for (int m = 0; m <= 4; ++m) {
    for (int n = m + 1; n <= 4; ++n) CHECK(std::abs(overlap(states[m].psi, states[n].psi, grid.step())) <= 1e-6);
  }
  for (int n = 1; n <= 4; ++n) CHECK(states[n].energy > states[n - 1].energy);
}

TEST_CASE("node count") {
  for (int m = 1; m <= 6; ++m) {
    std::vector<double> s;
    for (int i = 0; i <= 1000; ++i) s.push_back(std::sin(m * std::numbers::pi * i / 1000.0));
    CHECK(node_count(s) == m - 1);
  }
  CHECK(node_count(std::vector<double>{1.0, 2.0, 1.0}) == 0);
  CHECK(node_count(std::vector<double>{1.0, 1e-14, -1.0, 1e-20, 1.0}) == 2);
}

TEST_CASE("oracle grid covers the turning points with decaying tails") {
  const auto pot = Potential::harmonic(1.0, 0.0, 1.0, {-15, 15});
  const ScreeningParams p(1.0);
  const Grid g = oracle_grid(pot, p, 10.5);
  const double xt = std::sqrt(21.0);
  CHECK(g.x_min < -xt);
  CHECK(g.x_max > xt);
  CHECK(g.x_min >= -15.0);
  CHECK(g.points == kDefaultOraclePoints);
  CHECK(g.refined().points == 2 * kDefaultOraclePoints - 1);
}
