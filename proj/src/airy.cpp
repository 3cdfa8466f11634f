#include "swkb/airy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "swkb/errors.hpp"
#include "swkb/numerics.hpp"

namespace swkb {

namespace {

// Ai(0) and -Ai'(0).
constexpr long double kC1 = 0.355028053887817239260063186004183176L;
constexpr long double kC2 = 0.258819403792806798405183560189203963L;
constexpr long double kSqrt3 = 1.732050807568877293527446341505872367L;

// Maclaurin window [-kSeriesNegative, kSeriesPositive]. Beyond kSeriesPositive
// the series loses Ai to cancellation, so Ai is carried back by Taylor steps of
// w'' = x w from the asymptotic value at kAsymptoticPositive (Ai grows in that
// direction, so the march is stable). Bi keeps the series up to there.
constexpr double kSeriesPositive = 3.5;
constexpr double kAsymptoticPositive = 8.5;
constexpr double kSeriesNegative = 8.0;

AiryValues maclaurin(double xd) {
  const long double x = xd;
  const long double x3 = x * x * x;
  long double f = 1.0L, g = x, fp = 0.0L, gp = 1.0L;
  long double tf = 1.0L, tg = x, tfp = x * x / 2.0L, tgp = 1.0L;
  fp = tfp;
  for (int k = 1; k < 400; ++k) {
    const long double k3 = 3.0L * k;
    tf *= x3 / ((k3 - 1.0L) * k3);
    tg *= x3 / (k3 * (k3 + 1.0L));
    tgp *= x3 / (k3 * (k3 - 2.0L));
    if (k > 1) tfp *= x3 / ((k3 - 3.0L) * (k3 - 1.0L));
    f += tf;
    g += tg;
    gp += tgp;
    if (k > 1) fp += tfp;
    const long double tiny = 1e-21L;
    if (std::fabs(tf) + std::fabs(tg) + std::fabs(tfp) + std::fabs(tgp) <
        tiny * (std::fabs(f) + std::fabs(g) + std::fabs(fp) + std::fabs(gp))) {
      break;
    }
  }
  AiryValues v;
  v.ai = static_cast<double>(kC1 * f - kC2 * g);
  v.ai_prime = static_cast<double>(kC1 * fp - kC2 * gp);
  v.bi = static_cast<double>(kSqrt3 * (kC1 * f + kC2 * g));
  v.bi_prime = static_cast<double>(kSqrt3 * (kC1 * fp + kC2 * gp));
  return v;
}

// Coefficients u_k, v_k of the asymptotic expansions; the sums are cut at the
// smallest term.
struct AsymptoticSums {
  double u_even = 0.0, u_odd = 0.0, v_even = 0.0, v_odd = 0.0;  // alternating, for x < 0
  double u_alt = 0.0, v_alt = 0.0;                               // sum (-1)^k u_k / zeta^k
  double u_all = 0.0, v_all = 0.0;                               // sum u_k / zeta^k
};

AsymptoticSums asymptotic_sums(double zeta) {
  AsymptoticSums s;
  double u = 1.0;
  double last = INFINITY;
  double power = 1.0;  // zeta^-k
  for (int k = 0; k < 60; ++k) {
    if (k > 0) u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
    const double v = k == 0 ? 1.0 : -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u;
    const double tu = u * power;
    const double tv = v * power;
    const double size = std::max(std::abs(tu), std::abs(tv));
    if (size > last) break;
    last = size;
    const double alt = (k % 2 == 0) ? 1.0 : -1.0;
    s.u_alt += alt * tu;
    s.v_alt += alt * tv;
    s.u_all += tu;
    s.v_all += tv;
    const double pair_sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      s.u_even += pair_sign * tu;
      s.v_even += pair_sign * tv;
    } else {
      s.u_odd += pair_sign * tu;
      s.v_odd += pair_sign * tv;
    }
    if (size < 1e-17) break;
    power /= zeta;
  }
  return s;
}

AiryValues asymptotic(double x) {
  constexpr double inv_sqrt_pi = std::numbers::inv_sqrtpi;
  AiryValues v;
  if (x > 0.0) {
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    const double q = std::pow(x, 0.25);
    const AsymptoticSums s = asymptotic_sums(zeta);
    const double decay = std::exp(-zeta);
    const double growth = std::exp(zeta);
    v.ai = 0.5 * inv_sqrt_pi * decay / q * s.u_alt;
    v.ai_prime = -0.5 * inv_sqrt_pi * q * decay * s.v_alt;
    v.bi = inv_sqrt_pi * growth / q * s.u_all;
    v.bi_prime = inv_sqrt_pi * q * growth * s.v_all;
    return v;
  }
  const double z = -x;
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  const double q = std::pow(z, 0.25);
  const AsymptoticSums s = asymptotic_sums(zeta);
  const double phase = zeta - 0.25 * std::numbers::pi;
  const double c = std::cos(phase);
  const double sn = std::sin(phase);
  v.ai = inv_sqrt_pi / q * (c * s.u_even + sn * s.u_odd);
  v.ai_prime = inv_sqrt_pi * q * (sn * s.v_even - c * s.v_odd);
  v.bi = inv_sqrt_pi / q * (-sn * s.u_even + c * s.u_odd);
  v.bi_prime = inv_sqrt_pi * q * (c * s.v_even + sn * s.v_odd);
  return v;
}

// Advances (w, w') of w'' = x w from x0 to x0 + t by the local Taylor series.
void taylor_step(long double& w, long double& wp, long double x0, long double t) {
  long double a_prev2 = w;         // a_{n-2}
  long double a_prev1 = wp;        // a_{n-1}
  long double a_prev3 = 0.0L;      // a_{n-3}
  long double value = w + wp * t;
  long double slope = wp;
  long double power = t;           // t^{n-1}
  for (int n = 2; n < 200; ++n) {
    const long double a = (x0 * a_prev2 + a_prev3) / (static_cast<long double>(n) * (n - 1));
    const long double dv = a * power * t;
    const long double ds = n * a * power;
    value += dv;
    slope += ds;
    if (std::fabs(dv) + std::fabs(ds) < 1e-22L * (std::fabs(value) + std::fabs(slope)) && n > 4) break;
    a_prev3 = a_prev2;
    a_prev2 = a_prev1;
    a_prev1 = a;
    power *= t;
  }
  w = value;
  wp = slope;
}

AiryValues bridged(double x) {
  AiryValues v = maclaurin(x);
  const AiryValues far = asymptotic(kAsymptoticPositive);
  long double w = far.ai;
  long double wp = far.ai_prime;
  long double at = kAsymptoticPositive;
  const long double step = 0.25L;
  while (at - x > 1e-15L) {
    const long double t = -std::min(step, at - static_cast<long double>(x));
    taylor_step(w, wp, at, t);
    at += t;
  }
  v.ai = static_cast<double>(w);
  v.ai_prime = static_cast<double>(wp);
  return v;
}

}  // namespace

AiryValues airy(double x) {
  if (!(std::abs(x) <= kAiryMaxArgument)) {
    const double zeta = 2.0 / 3.0 * std::pow(std::abs(x), 1.5);
    throw RangeError("Airy argument " + std::to_string(x) + " outside [-30, 30]; exponent scale " +
                         std::to_string(zeta),
                     zeta);
  }
  if (x <= kSeriesPositive && x >= -kSeriesNegative) return maclaurin(x);
  if (x > kSeriesPositive && x <= kAsymptoticPositive) return bridged(x);
  return asymptotic(x);
}

double airy_ai(double x) { return airy(x).ai; }
double airy_ai_prime(double x) { return airy(x).ai_prime; }
double airy_bi(double x) { return airy(x).bi; }
double airy_bi_prime(double x) { return airy(x).bi_prime; }

double airy_ai_zero(int k) {
  if (k < 1) throw DomainError("Airy zeros are numbered from 1");
  const double t = 3.0 * std::numbers::pi * (4.0 * k - 1.0) / 8.0;
  const double t2 = t * t;
  const double guess = -std::pow(t, 2.0 / 3.0) * (1.0 + 5.0 / (48.0 * t2) - 5.0 / (36.0 * t2 * t2));
  const double half_width = 0.2;
  return numerics::find_root(airy_ai, guess - half_width, guess + half_width, 1e-15).root;
}

}  // namespace swkb
