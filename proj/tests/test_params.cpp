#include <doctest.h>

#include <cmath>

#include "swkb/errors.hpp"
#include "swkb/params.hpp"

using namespace swkb;

TEST_CASE("effective hbar is alpha times hbar") {
  CHECK(effective_hbar(ScreeningParams(1.0)) == 1.0);
  CHECK(effective_hbar(ScreeningParams(0.25)) == 0.25);
  CHECK(effective_hbar(ScreeningParams(0.1, 1.0, kHbarSI)) == doctest::Approx(1.05457e-35).epsilon(1e-12));
}

TEST_CASE("construction rejects out-of-range parameters") {
  CHECK_THROWS_AS(ScreeningParams(0.0), DomainError);
  CHECK_THROWS_AS(ScreeningParams(-0.1), DomainError);
  CHECK_THROWS_AS(ScreeningParams(1.5), DomainError);
  CHECK_THROWS_AS(ScreeningParams(0.5, 0.0), DomainError);
  CHECK_THROWS_AS(ScreeningParams(0.5, 1.0, -1.0), DomainError);
  CHECK_NOTHROW(ScreeningParams(1.0));

  const ScreeningParams p(0.5, 2.0, 3.0);
  CHECK(p.screening_mass() == 1.0);
  CHECK(p.with_alpha(0.25) == ScreeningParams(0.25, 2.0, 3.0));
}

TEST_CASE("screening size boundary and reference values") {
  CHECK(screening_size(1.0) == 1.0);
  CHECK(screening_size(0.0) == 0.0);
  CHECK(std::abs(screening_size(0.488) - 0.2) <= 1e-12);
  CHECK_THROWS_AS(screening_size(-1e-3), DomainError);
  CHECK_THROWS_AS(screening_size(1.001), DomainError);
}

TEST_CASE("screening size is monotone and linear at small alpha") {
  constexpr int n = 10000;
  double prev = screening_size(0.0);
  bool monotone = true;
  for (int i = 1; i <= n; ++i) {
    const double s = screening_size(static_cast<double>(i) / n);
    monotone = monotone && s > prev;
    prev = s;
  }
  CHECK(monotone);

  for (int i = 1; i <= 100; ++i) {
    const double a = 0.1 * i / 100.0;
    CHECK(std::abs(screening_size(a) - a / 3.0) <= a * a);
  }
}

TEST_CASE("uncertainty bound") {
  CHECK(uncertainty_bound(ScreeningParams(1.0)) == 0.5);
  CHECK(uncertainty_bound(ScreeningParams(0.2)) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(uncertainty_bound(ScreeningParams(1e-12)) < 1e-11);
  for (double a : {0.9, 0.3, 0.01}) {
    CHECK(uncertainty_bound(ScreeningParams(a)) == a * uncertainty_bound(ScreeningParams(1.0)));
  }
}
