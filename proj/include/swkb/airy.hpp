#pragma once

namespace swkb {

struct AiryValues {
  double ai;
  double ai_prime;
  double bi;
  double bi_prime;
};

/// Largest |x| accepted by the Airy routines.
inline constexpr double kAiryMaxArgument = 30.0;

/// Ai, Ai', Bi, Bi' at x. Maclaurin series (extended precision) inside the
/// crossover window, asymptotic expansions outside. Throws RangeError for
/// |x| > kAiryMaxArgument.
AiryValues airy(double x);

double airy_ai(double x);
double airy_ai_prime(double x);
double airy_bi(double x);
double airy_bi_prime(double x);

/// k-th zero of Ai (k >= 1), negative: a_1 = -2.33810741...
double airy_ai_zero(int k);

}  // namespace swkb
