#include "ewh/jets.hpp"

#include <cmath>
#include <string>

namespace ewh {

using Series = std::array<double, kJetOrder + 1>;

Jet1 jet1_from_derivatives(const Series& derivs) {
  Jet1::Coeffs c{};
  for (int k = 0; k <= kJetOrder; ++k) c[k] = derivs[k] / detail::factorial(k);
  return Jet1::from_coeffs(c);
}

Series derivatives_of(const Jet1& f) {
  Series d{};
  for (int k = 0; k <= kJetOrder; ++k) d[k] = f[k] * detail::factorial(k);
  return d;
}

Jet1 differentiate(const Jet1& f) { return f.derivative(0); }

Jet1 antiderivative(const Jet1& f, double base) {
  Jet1::Coeffs c{};
  c[0] = base;
  for (int k = 1; k <= kJetOrder; ++k) c[k] = f[k - 1] / k;
  return Jet1::from_coeffs(c);
}

namespace jet_detail {

namespace {
// Convert derivative values to Taylor coefficients in place.
Series taylor(Series d) {
  for (int k = 2; k <= kJetOrder; ++k) d[k] /= detail::factorial(k);
  return d;
}
}  // namespace

Series exp_series(double v) {
  const double e = std::exp(v);
  return taylor({e, e, e, e, e});
}

Series log_series(double v) {
  if (!(v > 0.0)) throw SingularPointError("log of non-positive value " + std::to_string(v), v);
  const double i = 1.0 / v;
  return {std::log(v), i, -0.5 * i * i, i * i * i / 3.0, -0.25 * i * i * i * i};
}

Series sin_series(double v) {
  const double s = std::sin(v), c = std::cos(v);
  return taylor({s, c, -s, -c, s});
}

Series cos_series(double v) {
  const double s = std::sin(v), c = std::cos(v);
  return taylor({c, -s, -c, s, c});
}

Series tan_series(double v) {
  const double cv = std::cos(v);
  if (std::abs(cv) < 1e-12) throw SingularPointError("tan evaluated at a pole", v);
  const double t = std::tan(v);
  const double s = 1.0 + t * t;
  return taylor({t, s, 2.0 * t * s, s * (2.0 + 6.0 * t * t), s * (16.0 * t + 24.0 * t * t * t)});
}

Series tanh_series(double v) {
  const double t = std::tanh(v);
  const double s = 1.0 - t * t;
  return taylor({t, s, -2.0 * t * s, s * (6.0 * t * t - 2.0), s * (16.0 * t - 24.0 * t * t * t)});
}

Series sinh_series(double v) {
  const double s = std::sinh(v), c = std::cosh(v);
  return taylor({s, c, s, c, s});
}

Series cosh_series(double v) {
  const double s = std::sinh(v), c = std::cosh(v);
  return taylor({c, s, c, s, c});
}

Series pow_series(double v, double p) {
  const bool integral = p == std::floor(p);
  if (v == 0.0 && !(integral && p >= 0.0)) throw SingularPointError("pow at zero base", v);
  if (v < 0.0 && !integral) throw SingularPointError("non-integer pow of negative value", v);
  Series d{};
  double coef = 1.0;
  for (int k = 0; k <= kJetOrder; ++k) {
    const double e = p - k;
    // integral exponents that reach zero have identically vanishing tails
    d[k] = coef == 0.0 ? 0.0 : coef * std::pow(v, e);
    coef *= e;
  }
  return taylor(d);
}

Series asin_series(double v) {
  if (!(std::abs(v) < 1.0)) throw SingularPointError("asin outside (-1, 1)", v);
  const double q = 1.0 - v * v;
  const double s = 1.0 / std::sqrt(q);
  return taylor({std::asin(v), s, v * s / q, (1.0 + 2.0 * v * v) * s / (q * q),
                 (6.0 * v * v * v + 9.0 * v) * s / (q * q * q)});
}

Series atan_series(double v) {
  const double q = 1.0 / (1.0 + v * v);
  return taylor({std::atan(v), q, -2.0 * v * q * q, (6.0 * v * v - 2.0) * q * q * q,
                 24.0 * v * (1.0 - v * v) * q * q * q * q});
}

}  // namespace jet_detail
}  // namespace ewh
