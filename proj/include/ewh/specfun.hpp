#pragma once

// Special functions on the real line: Weierstrass P with g2 = 0, Jacobi
// elliptic functions for real modulus (plus the imaginary-modulus sn), and
// the Gauss hypergeometric series.
//
// The series/recurrence kernels are templates so they can be run directly in
// jet arithmetic; tests use that to differentiate the algorithms themselves
// rather than trusting the derivative identities used by the fast paths.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <utility>

#include "ewh/errors.hpp"
#include "ewh/jets.hpp"

namespace ewh {

inline double magnitude(double v) { return std::abs(v); }
template <int N>
double magnitude(const Jet<N>& j) {
  double m = 0.0;
  for (double c : j.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

// ---------------------------------------------------------------------------
// Weierstrass P(z; 0, b)

inline constexpr double kDefaultPoleRadius = 1e-3;
inline constexpr int kLaurentTerms = 9;  // c_2 .. c_9, i.e. through z^16

struct WeierstrassParams {
  double g3 = 1.0;  // the invariant b; g2 is fixed to 0
  double pole_radius = kDefaultPoleRadius;
};

struct WeierstrassValue {
  double p = 0.0;   // P(z)
  double dp = 0.0;  // P'(z)
};

// Laurent coefficients c_k of P(z) = z^-2 + sum_{k>=2} c_k z^(2k-2), g2 = 0.
std::array<double, kLaurentTerms + 1> weierstrass_laurent(double g3);

// Radius within which the Laurent series is used directly. Scales with the
// lattice so that large |b| (small periods) still converges.
double weierstrass_series_radius(double g3);

// Number of halvings that bring |z| inside the series radius.
int weierstrass_duplications(double z, double g3);

// Laurent series at z / 2^n followed by n duplication steps. No period
// reduction; callers keep z away from lattice points.
template <class T>
std::pair<T, T> weierstrass_raw(const T& z, double g3, int duplications) {
  const auto c = weierstrass_laurent(g3);
  const T w = z * std::ldexp(1.0, -duplications);
  const T w2 = w * w;
  T p = 1.0 / w2;
  T dp = -2.0 / (w2 * w);
  T pow_w = w2;  // w^(2k-2) for k = 2
  T pow_dw = w;  // w^(2k-3)
  for (int k = 2; k <= kLaurentTerms; ++k) {
    if (c[k] != 0.0) {
      p += c[k] * pow_w;
      dp += (c[k] * (2.0 * k - 2.0)) * pow_dw;
    }
    pow_w = pow_w * w2;
    pow_dw = pow_dw * w2;
  }
  for (int i = 0; i < duplications; ++i) {
    const T pp = 6.0 * p * p;          // P''
    const T ppp = 12.0 * p * dp;       // P'''
    const T ratio = pp / dp;
    const T p2 = -2.0 * p + 0.25 * ratio * ratio;
    const T dp2 = -1.0 * dp + 0.25 * ratio * (ppp * dp - pp * pp) / (dp * dp);
    p = p2;
    dp = dp2;
  }
  return {p, dp};
}

// Real half-period: the first positive zero of P' on the real axis, located
// by bisection once per b and cached. Infinite for b == 0.
double weierstrass_half_period(double g3);

// P and P' at real z. Throws PoleError within pole_radius of a real lattice
// point.
WeierstrassValue wp(double z, double g3, double pole_radius = kDefaultPoleRadius);

// Taylor data of P(z(.)) using P'' = 6P^2, P''' = 12 P P', P'''' = 12P'^2 + 72P^3.
std::array<double, kJetOrder + 1> wp_derivatives(double z, double g3,
                                                 double pole_radius = kDefaultPoleRadius);

template <int N>
Jet<N> wp_jet(const Jet<N>& z, double g3, double pole_radius = kDefaultPoleRadius) {
  return compose(jet1_from_derivatives(wp_derivatives(z.value(), g3, pole_radius)), z);
}

// ---------------------------------------------------------------------------
// Jacobi elliptic functions

template <class T>
struct JacobiTriple {
  T sn, cn, dn;
};

// Arithmetic-geometric mean with descending Landen back-substitution,
// 0 <= k <= 1.
template <class T>
JacobiTriple<T> jacobi_elliptic(const T& u, double k) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  if (!(k >= 0.0 && k <= 1.0)) throw DomainError("jacobi_sn_cn_dn: modulus outside [0, 1]");
  if (k == 0.0) return {sin(u), cos(u), T(1.0)};
  if (k == 1.0) {
    using std::cosh;
    using std::tanh;
    const T sech = 1.0 / cosh(u);
    return {tanh(u), sech, sech};
  }
  constexpr int kMaxLevels = 32;
  std::array<double, kMaxLevels + 1> a{}, c{};
  a[0] = 1.0;
  double b = std::sqrt(1.0 - k * k);
  c[0] = k;
  int n = 0;
  while (std::abs(c[n]) > 1e-16 * a[n] && n < kMaxLevels) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  T phi = u * (std::ldexp(1.0, n) * a[n]);
  for (int i = n; i >= 1; --i) {
    using std::asin;
    phi = 0.5 * (phi + asin((c[i] / a[i]) * sin(phi)));
  }
  const T s = sin(phi);
  return {s, cos(phi), sqrt(1.0 - (k * k) * s * s)};
}

JacobiTriple<double> jacobi_sn_cn_dn(double u, double k);

// sn(u, i) = sd(u sqrt2, 1/sqrt2) / sqrt2, with sd = sn / dn. Real and
// pole-free on the real axis since dn > 0 for modulus below 1.
template <class T>
T sn_imaginary_modulus_t(const T& u) {
  const double s2 = std::sqrt(2.0);
  const auto j = jacobi_elliptic(u * s2, 1.0 / s2);
  return j.sn / j.dn * (1.0 / s2);
}

double sn_imaginary_modulus(double u);

// ---------------------------------------------------------------------------
// Gauss hypergeometric 2F1

inline constexpr double kSeriesTolerance = 1e-12;
inline constexpr int kSeriesMaxTerms = 10000;

template <class T>
T hyp2f1_t(double a, double b, double c, const T& z) {
  if (!(std::abs(value_of(z)) < 1.0)) throw DomainError("hyp2f1: |z| >= 1");
  if (c <= 0.0 && c == std::floor(c)) throw DomainError("hyp2f1: c is a non-positive integer");
  T sum = 1.0;
  T term = 1.0;
  for (int n = 0; n < kSeriesMaxTerms; ++n) {
    const double ratio = (a + n) * (b + n) / ((c + n) * (n + 1.0));
    term = term * z * ratio;
    sum += term;
    const double tm = magnitude(term);
    if (tm == 0.0 || tm <= kSeriesTolerance * magnitude(sum)) return sum;
  }
  throw AccuracyError("hyp2f1: series did not converge within the term cap", value_of(sum),
                      magnitude(term));
}

double hyp2f1(double a, double b, double c, double z);

}  // namespace ewh
