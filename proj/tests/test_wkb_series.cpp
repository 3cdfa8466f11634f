#include <doctest.h>

#include <cmath>
#include <numbers>

#include "swkb/classical_limit.hpp"
#include "swkb/errors.hpp"
#include "swkb/wkb_series.hpp"

using namespace swkb;

namespace {

const ScreeningParams unit{1.0};

Potential flat() { return Potential::tabulated({-10, -5, 0, 5, 10}, {0, 0, 0, 0, 0}); }

// Morse far out on its plateau: V' and V'' are below 1e-15.
Potential plateau() { return Potential::morse(10.0, 1.0, 0.0, {-2, 60}); }

}  // namespace

TEST_CASE("y0") {
  const auto h = Potential::harmonic(1.0, 0.0, 1.0, {-5, 5});
  const LocalMomentum lm(h, 0.5, 1.0);
  CHECK(y0(lm, 0.0, Branch::plus) == doctest::Approx(1.0));
  CHECK(y0(lm, 0.0, Branch::minus) == doctest::Approx(-1.0));
  CHECK(y0(lm, 1.0, Branch::plus) == 0.0);

  const auto lin = Potential::linear(1.0, false, {-10, 10});
  const LocalMomentum lm2(lin, 4.0, 0.5);
  CHECK(y0(lm2, 3.0, Branch::plus) == doctest::Approx(1.0));
  CHECK_THROWS_AS(y0(lm2, 5.0, Branch::plus), ForbiddenRegionError);
}

TEST_CASE("y1") {
  const auto h = Potential::harmonic(1.0, 0.0, 1.0, {-5, 5});
  const LocalMomentum lm(h, 1.0, 1.0);
  CHECK(y1(lm, 0.0, unit) == 0.0);
  CHECK(y1(lm, 1.0, unit) == doctest::Approx(0.5));

  const auto lin = Potential::linear(1.0, false, {-10, 10});
  const LocalMomentum lm2(lin, 4.0, 0.5);
  CHECK(y1(lm2, 3.0, unit) == doctest::Approx(0.25));
  CHECK_THROWS_AS(y1(lm2, 4.0, unit), NearTurningPointError);
}

TEST_CASE("y2") {
  const auto h = Potential::harmonic(1.0, 0.0, 1.0, {-5, 5});
  const LocalMomentum lm(h, 1.0, 1.0);
  CHECK(y2(lm, 0.0, unit, Branch::plus) == doctest::Approx(-4.0 / (32.0 * std::sqrt(2.0))).epsilon(1e-14));

  const auto lin = Potential::linear(1.0, false, {-10, 100});
  const LocalMomentum lm2(lin, 4.0, 0.5);
  CHECK(y2(lm2, 3.0, unit, Branch::plus) == doctest::Approx(-0.15625).epsilon(1e-14));

  const LocalMomentum deep(lin, 90.0, 0.5);
  CHECK(std::abs(y2(deep, -9.0, unit, Branch::plus)) < 1e-5);
}

TEST_CASE("y3") {
  const auto lin = Potential::linear(1.0, false, {-10, 10});
  const LocalMomentum lm(lin, 4.0, 0.5);
  CHECK(y3(lm, 3.0, unit, Branch::plus) == doctest::Approx(0.234375).epsilon(1e-8));

  const auto m = plateau();
  const LocalMomentum lm2(m, 15.0, 1.0);
  CHECK(std::abs(y3(lm2, 45.0, unit, Branch::plus)) < 1e-12);

  const auto t = flat();
  const LocalMomentum lm3(t, 1.0, 1.0);
  CHECK_THROWS_AS(y3(lm3, 0.5, unit, Branch::plus), UnsupportedOrderError);
}

TEST_CASE("branch flip changes the sign of y0 and y2 only") {
  // y3 = -hbar d/dx [y2 / (2 y0)] is a ratio of two odd terms and keeps its sign.
  const auto q = Potential::quartic(1.0, {-4, 4});
  const LocalMomentum lm(q, 3.0, 1.0);
  const ScreeningParams p(0.3);
  for (double x : {-0.9, 0.2, 1.1}) {
    const auto plus = series_terms(lm, x, p, Branch::plus);
    const auto minus = series_terms(lm, x, p, Branch::minus);
    CHECK(minus.y0 == -plus.y0);
    CHECK(minus.y1 == plus.y1);
    CHECK(minus.y2 == -plus.y2);
    CHECK(minus.y3 == doctest::Approx(plus.y3).epsilon(1e-10));
  }
}

TEST_CASE("recursion defects") {
  const auto h = Potential::harmonic(1.0, 0.0, 1.0, {-5, 5});
  const LocalMomentum lm(h, 1.0, 1.0);
  const double d1 = recursion_defect(lm, 0.5, unit, 1, Branch::plus);
  CHECK(std::abs(d1) <= 1e-6 * std::abs(y0(lm, 0.5, Branch::plus) * y1(lm, 0.5, unit)));

  const auto lin = Potential::linear(1.0, false, {-10, 10});
  const LocalMomentum lm2(lin, 4.0, 0.5);
  CHECK(std::abs(recursion_defect(lm2, 1.0, unit, 2, Branch::plus)) <=
        1e-6 * recursion_term_scale(lm2, 1.0, unit, 2, Branch::plus));

  const auto q = Potential::quartic(1.0, {-4, 4});
  const LocalMomentum lm3(q, 5.0, 1.0);
  for (Branch b : {Branch::plus, Branch::minus}) {
    for (double x : {-1.2, 0.3, 1.0}) {
      for (int n = 1; n <= 3; ++n) {
        CHECK(std::abs(recursion_defect(lm3, x, unit, n, b)) <= 1e-5 * recursion_term_scale(lm3, x, unit, n, b));
      }
    }
  }
  CHECK_THROWS_AS(recursion_defect(lm3, 0.0, unit, 4, Branch::plus), UnsupportedOrderError);
}

TEST_CASE("series sum") {
  const auto lin = Potential::linear(1.0, false, {-10, 10});
  const LocalMomentum lm(lin, 4.0, 0.5);
  const Complex s0 = series_sum(lm, 3.0, unit, 0, Branch::plus);
  CHECK(s0 == Complex(y0(lm, 3.0, Branch::plus), 0.0));
  const Complex s1 = series_sum(lm, 3.0, unit, 1, Branch::plus);
  CHECK(s1.real() == doctest::Approx(1.0));
  CHECK(s1.imag() == doctest::Approx(-0.25));

  // Even orders add to the real part, odd orders to the imaginary part.
  const ScreeningParams p(0.5);
  const auto t = series_terms(lm, 3.0, p, Branch::plus);
  const Complex s3 = series_sum(lm, 3.0, p, 3, Branch::plus);
  CHECK(s3.real() == doctest::Approx(t.y0 - 0.25 * t.y2).epsilon(1e-14));
  CHECK(s3.imag() == doctest::Approx(-0.5 * t.y1 + 0.125 * t.y3).epsilon(1e-14));

  const Complex tiny = series_sum(lm, 3.0, ScreeningParams(1e-9), 3, Branch::plus);
  CHECK(std::abs(tiny - s0) < 1e-8);
}

TEST_CASE("riccati residual") {
  const auto t = flat();
  const LocalMomentum lm(t, 1.0, 1.0);
  for (int k = 0; k <= 2; ++k) CHECK(std::abs(riccati_residual(lm, 0.7, unit, k, Branch::plus)) < 1e-14);

  const auto m = plateau();
  const LocalMomentum lm2(m, 15.0, 1.0);
  CHECK(std::abs(riccati_residual(lm2, 45.0, unit, 3, Branch::plus)) < 1e-12);

  const auto h = Potential::harmonic(1.0, 0.0, 1.0, {-5, 5});
  const LocalMomentum lm3(h, 1.0, 1.0);
  for (int k = 0; k <= 3; ++k) {
    const double r1 = std::abs(riccati_residual(lm3, 0.5, ScreeningParams(0.02), k, Branch::plus));
    const double r2 = std::abs(riccati_residual(lm3, 0.5, ScreeningParams(0.01), k, Branch::plus));
    CHECK(r1 / r2 == doctest::Approx(std::pow(2.0, k + 1)).epsilon(0.2));
  }
  for (double a : {0.1, 0.03, 0.01}) {
    const ScreeningParams p(a);
    CHECK(std::abs(riccati_residual(lm3, 0.5, p, 3, Branch::plus)) <=
          std::abs(riccati_residual(lm3, 0.5, p, 1, Branch::plus)));
  }
}

TEST_CASE("validity metric") {
  const auto h = Potential::harmonic(1.0, 0.0, 1.0, {-5, 5});
  const LocalMomentum lm(h, 1.0, 1.0);
  CHECK(validity_metric(lm, 0.0, unit) == 0.0);
  const double tp = std::sqrt(2.0);
  CHECK(validity_metric(lm, tp - 1e-6, unit) > 1e4);
  const double m1 = validity_metric(lm, 0.8, ScreeningParams(0.2));
  CHECK(validity_metric(lm, 0.8, ScreeningParams(0.6)) == doctest::Approx(3.0 * m1).epsilon(1e-14));

  const double r = turning_point_exclusion(lm, unit, tp);
  CHECK(validity_metric(lm, tp - r, unit) == doctest::Approx(10.0).epsilon(1e-6));
  CHECK_THROWS_AS(require_clear_interval(lm, unit, 0.0, tp - 0.5 * r), NearTurningPointError);
  CHECK_NOTHROW(require_clear_interval(lm, unit, 0.0, tp - 2.0 * r));
}

TEST_CASE("phase integral") {
  const auto h = Potential::harmonic(1.0, 0.0, 1.0, {-5, 5});
  const double e = 1.0;
  const LocalMomentum lm(h, e, 1.0);
  const ScreeningParams p(0.1);

  const Complex sym = phase_integral(lm, -0.8, 0.8, p, 1, Branch::plus);
  CHECK(std::abs(sym.imag()) < 1e-12);

  const Complex whole = phase_integral(lm, -0.9, 0.7, p, 3, Branch::plus);
  const Complex parts = phase_integral(lm, -0.9, 0.1, p, 3, Branch::plus) + phase_integral(lm, 0.1, 0.7, p, 3, Branch::plus);
  CHECK(std::abs(whole - parts) < 1e-10 * std::abs(whole));

  const Complex s0 = phase_integral(lm, -0.9, 0.7, p, 0, Branch::plus);
  CHECK(s0.real() == doctest::Approx(action_s0(h, e, 1.0, -0.9, 0.7)).epsilon(1e-10));
  CHECK(s0.imag() == 0.0);

  // Closed orbit approaches 2 pi E / omega as the endpoints close in on the turning points.
  // A tiny alpha shrinks the turning-point exclusion zone enough to get there.
  const ScreeningParams classical(1e-9);
  const double xt = std::sqrt(2.0 * e);
  double prev_gap = std::numeric_limits<double>::infinity();
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const double closed = 2.0 * phase_integral(lm, -xt + eps, xt - eps, classical, 0, Branch::plus).real();
    const double gap = std::abs(closed - 2.0 * std::numbers::pi * e);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 1e-5);
}
