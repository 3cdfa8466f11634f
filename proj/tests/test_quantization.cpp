#include <doctest.h>

#include <cmath>
#include <numbers>

#include "swkb/errors.hpp"
#include "swkb/oracle.hpp"
#include "swkb/quantization.hpp"

using namespace swkb;

namespace {

Potential harmonic() { return Potential::harmonic(1.0, 0.0, 1.0, {-30, 30}); }

}  // namespace

TEST_CASE("rules") {
  CHECK(QuantizationRule::connection().maslov_offset == 0.5);
  CHECK(QuantizationRule::old_quantum().maslov_offset == 0.0);
  CHECK(QuantizationRule::from_name("half").name() == "half");
  CHECK(QuantizationRule::from_name("old").name() == "old");
  CHECK_THROWS_AS(QuantizationRule::from_name("bogus"), DomainError);

  const auto bouncer = Potential::linear(1.0, true, {0, 40});
  CHECK(effective_offset(QuantizationRule::connection(), bouncer) == 0.75);
  CHECK(effective_offset(QuantizationRule::old_quantum(), bouncer) == 0.0);
  CHECK(effective_offset(QuantizationRule::connection(), harmonic()) == 0.5);
}

TEST_CASE("harmonic action") {
  const auto pot = harmonic();
  for (double e : {0.1, 1.0, 7.3}) {
    CHECK(action_integral(pot, e, ScreeningParams(1.0)) == doctest::Approx(2.0 * std::numbers::pi * e).epsilon(1e-12));
  }
  const auto narrow = Potential::harmonic(1.0, 0.0, 1.0, {-1, 1});
  double prev = 1.0;
  for (double e : {1e-2, 1e-3, 1e-4}) {
    const double a = action_integral(narrow, e, ScreeningParams(1.0));
    CHECK(a < prev);
    prev = a;
  }
  CHECK(prev < 1e-3);
  CHECK_THROWS_AS(action_integral(pot, -1.0, ScreeningParams(1.0)), TopologyError);
}

TEST_CASE("action is increasing in energy") {
  const auto q = Potential::quartic(1.0, {-6, 6});
  double prev = 0.0;
  for (int i = 1; i <= 60; ++i) {
    const double a = action_integral(q, 0.25 * i, ScreeningParams(1.0));
    CHECK(a > prev);
    prev = a;
  }
}

TEST_CASE("harmonic levels are exact") {
  const auto pot = harmonic();
  for (double alpha : {1.0, 0.1, 0.01}) {
    const ScreeningParams p(alpha);
    for (int n = 0; n <= 10; ++n) {
      const double e = quantize(pot, n, p, QuantizationRule::connection());
      CHECK(std::abs(e - (n + 0.5) * alpha) <= 1e-8 * (n + 0.5) * alpha);
      if (n >= 1) {
        CHECK(quantize(pot, n, p, QuantizationRule::old_quantum()) == doctest::Approx(n * alpha).epsilon(1e-8));
      }
    }
  }
  CHECK_THROWS_AS(quantize(pot, 0, ScreeningParams(1.0), QuantizationRule::old_quantum()), DomainError);
  CHECK_THROWS_AS(quantize(pot, -1, ScreeningParams(1.0), QuantizationRule::connection()), DomainError);
}

TEST_CASE("harmonic levels scale with alpha") {
  const auto pot = harmonic();
  for (int n = 0; n <= 8; ++n) {
    const double e1 = quantize(pot, n, ScreeningParams(1.0), QuantizationRule::connection());
    const double e3 = quantize(pot, n, ScreeningParams(0.3), QuantizationRule::connection());
    CHECK(e3 == doctest::Approx(0.3 * e1).epsilon(1e-9));
  }
}

TEST_CASE("bouncer levels") {
  const auto pot = Potential::linear(1.0, true, {0, 40});
  const ScreeningParams p(1.0, 0.5);
  const double e1 = quantize(pot, 0, p, QuantizationRule::connection());
  CHECK(e1 == doctest::Approx(std::pow(1.5 * std::numbers::pi * 0.75, 2.0 / 3.0)).epsilon(1e-10));
  CHECK(e1 == doctest::Approx(2.3203).epsilon(1e-4));
  CHECK(std::abs(e1 - 2.33811) / 2.33811 < 0.01);
}

TEST_CASE("spectrum") {
  const auto pot = harmonic();
  const auto s1 = spectrum(pot, 6, ScreeningParams(1.0), QuantizationRule::connection());
  REQUIRE(s1.complete());
  REQUIRE(s1.levels.size() == 7);
  for (std::size_t i = 1; i < s1.levels.size(); ++i) {
    CHECK(s1.levels[i].energy - s1.levels[i - 1].energy == doctest::Approx(1.0).epsilon(1e-8));
  }
  const auto s01 = spectrum(pot, 6, ScreeningParams(0.1), QuantizationRule::connection());
  for (std::size_t i = 0; i < s1.levels.size(); ++i) {
    CHECK(s01.levels[i].energy == doctest::Approx(0.1 * s1.levels[i].energy).epsilon(1e-9));
  }

  const auto old = spectrum(pot, 3, ScreeningParams(1.0), QuantizationRule::old_quantum());
  REQUIRE(old.levels.size() == 3);
  CHECK(old.levels.front().n == 1);

  const auto q = Potential::quartic(1.0, {-6, 6});
  const auto sq = spectrum(q, 8, ScreeningParams(1.0), QuantizationRule::connection());
  REQUIRE(sq.complete());
  for (std::size_t i = 2; i < sq.levels.size(); ++i) {
    CHECK(sq.levels[i].energy - sq.levels[i - 1].energy > sq.levels[i - 1].energy - sq.levels[i - 2].energy);
  }
  for (const auto& level : sq.levels) CHECK(level.action_defect <= 1e-10 * 2.0 * std::numbers::pi * (level.n + 0.5));
}

TEST_CASE("levels above the ceiling are reported") {
  const auto q = Potential::quartic(1.0, {-2, 2});
  const auto s = spectrum(q, 40, ScreeningParams(1.0), QuantizationRule::connection());
  CHECK_FALSE(s.complete());
  CHECK(s.failures.front().n == static_cast<int>(s.levels.size()));
  CHECK_THROWS_AS(quantize(q, 40, ScreeningParams(1.0), QuantizationRule::connection()), NoBoundStateError);
}

TEST_CASE("level ratios do not depend on units") {
  const auto q = Potential::quartic(1.0, {-8, 8});
  const ScreeningParams natural(0.5, 1.0, 1.0);
  const ScreeningParams other(0.5, 3.0, 2.0);
  const double n0 = quantize(q, 0, natural, QuantizationRule::connection());
  const double o0 = quantize(q, 0, other, QuantizationRule::connection());
  for (int n = 1; n <= 5; ++n) {
    const double rn = quantize(q, n, natural, QuantizationRule::connection()) / n0;
    const double ro = quantize(q, n, other, QuantizationRule::connection()) / o0;
    CHECK(ro == doctest::Approx(rn).epsilon(1e-9));
  }
}

TEST_CASE("wkb error against the oracle shrinks with n") {
  const auto q = Potential::quartic(1.0, {-6, 6});
  const ScreeningParams p(1.0);
  double prev = std::numeric_limits<double>::infinity();
  for (int n = 2; n <= 7; ++n) {
    const double wkb = quantize(q, n, p, QuantizationRule::connection());
    const double oracle = refined_eigenvalue(q, n, p, oracle_grid(q, p, wkb)).energy;
    const double err = std::abs(wkb - oracle);
    CHECK(err <= prev);
    prev = err;
  }
}
