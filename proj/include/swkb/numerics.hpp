#pragma once

// Shared numerical kernels: adaptive Gauss-Kronrod quadrature with a
// relative/absolute stopping rule, bracketed root refinement and Richardson
// extrapolated central differences.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "swkb/errors.hpp"

namespace swkb::numerics {

struct QuadratureTolerance {
  double relative = 1e-10;
  double absolute = 1e-12;
  int max_depth = 40;
};

namespace detail {

// Boost reports the embedded error of the rule mapped onto [-1, 1]; rescale to [a, b].
template <class F>
auto gk15(F& f, double a, double b, double& error) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  auto r = Rule::integrate(f, a, b, 0, 0.0, &error);
  error *= 0.5 * (b - a);
  return r;
}

template <class F, class R>
R refine_interval(F& f, double a, double b, R estimate, double error, double target, double total_width,
                  int depth, int max_depth) {
  if (error <= target * (b - a) / total_width || depth >= max_depth) {
    return estimate;
  }
  const double mid = 0.5 * (a + b);
  double err_left = 0.0;
  double err_right = 0.0;
  R left = gk15(f, a, mid, err_left);
  R right = gk15(f, mid, b, err_right);
  // Refined halves usually beat the parent estimate; only subdivide the halves
  // that still miss their share of the tolerance.
  return refine_interval(f, a, mid, left, err_left, target, total_width, depth + 1, max_depth) +
         refine_interval(f, mid, b, right, err_right, target, total_width, depth + 1, max_depth);
}

}  // namespace detail

/// Adaptive G7/K15 integration of f over [a, b]. The result may be real or
/// complex. Stops once the embedded error estimate of every leaf is below its
/// width-proportional share of max(relative * |I|, absolute).
template <class F>
auto integrate(F&& f, double a, double b, QuadratureTolerance tol = {}) -> decltype(f(a)) {
  using R = decltype(f(a));
  if (a == b) {
    return R{};
  }
  if (b < a) {
    return -integrate(f, b, a, tol);
  }
  double error = 0.0;
  R whole = detail::gk15(f, a, b, error);
  const double target = std::max(tol.relative * std::abs(whole), tol.absolute);
  return detail::refine_interval(f, a, b, whole, error, target, b - a, 0, tol.max_depth);
}

struct RootResult {
  double root;
  int iterations;
};

/// Refines a sign-changing bracket [a, b] of f until its width is below
/// rel_tol * max(|a|, |b|, scale_floor). Safeguarded TOMS 748 (secant/inverse
/// cubic steps with bisection fallback).
template <class F>
RootResult find_root(F&& f, double a, double b, double rel_tol, double scale_floor = 1.0, int max_iter = 200) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return {a, 0};
  if (fb == 0.0) return {b, 0};
  if ((fa > 0.0) == (fb > 0.0)) {
    throw ConvergenceError("find_root: interval does not bracket a sign change");
  }
  const double scale = std::max({std::abs(a), std::abs(b), scale_floor});
  auto done = [&](double lo, double hi) { return std::abs(hi - lo) <= rel_tol * scale; };
  std::uintmax_t iters = static_cast<std::uintmax_t>(max_iter);
  auto [lo, hi] = boost::math::tools::toms748_solve(f, a, b, fa, fb, done, iters);
  if (!done(lo, hi)) {
    throw ConvergenceError("find_root: iteration cap reached");
  }
  return {0.5 * (lo + hi), static_cast<int>(iters)};
}

/// Central difference with one Richardson step, O(h^4). Works for real or
/// complex valued f.
template <class F>
auto richardson_derivative(F&& f, double x, double h) -> decltype(f(x)) {
  auto d1 = (f(x + h) - f(x - h)) / (2.0 * h);
  const double h2 = 0.5 * h;
  auto d2 = (f(x + h2) - f(x - h2)) / (2.0 * h2);
  return (4.0 * d2 - d1) / 3.0;
}

/// Richardson extrapolated second derivative, O(h^4).
template <class F>
auto richardson_second_derivative(F&& f, double x, double h) -> decltype(f(x)) {
  auto fx = f(x);
  auto d1 = (f(x + h) - 2.0 * fx + f(x - h)) / (h * h);
  const double h2 = 0.5 * h;
  auto d2 = (f(x + h2) - 2.0 * fx + f(x - h2)) / (h2 * h2);
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace swkb::numerics
