#include "ewh/specfun.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>

namespace ewh {

std::array<double, kLaurentTerms + 1> weierstrass_laurent(double g3) {
  std::array<double, kLaurentTerms + 1> c{};
  c[2] = 0.0;  // g2 / 20
  c[3] = g3 / 28.0;
  for (int k = 4; k <= kLaurentTerms; ++k) {
    double s = 0.0;
    for (int m = 2; m <= k - 2; ++m) s += c[m] * c[k - m];
    c[k] = 3.0 * s / ((2.0 * k + 1.0) * (k - 3.0));
  }
  return c;
}

double weierstrass_series_radius(double g3) {
  return 0.5 / std::max(1.0, std::pow(std::abs(g3), 1.0 / 6.0));
}

int weierstrass_duplications(double z, double g3) {
  const double r0 = weierstrass_series_radius(g3);
  int n = 0;
  double w = std::abs(z);
  while (w > r0) {
    w *= 0.5;
    ++n;
  }
  return n;
}

namespace {

double raw_dp(double z, double g3) {
  return weierstrass_raw(z, g3, weierstrass_duplications(z, g3)).second;
}

double locate_half_period(double g3) {
  // natural length of the lattice: P(z; 0, b) = |b|^(1/3) P(|b|^(1/6) z; 0, sign b)
  const double scale = std::pow(std::abs(g3), -1.0 / 6.0);
  const double step = 0.05 * scale;
  double lo = 0.2 * scale;
  if (raw_dp(lo, g3) >= 0.0) throw Error("weierstrass_half_period: unexpected sign of P' near 0");
  double hi = lo + step;
  for (int i = 0; raw_dp(hi, g3) < 0.0; ++i) {
    if (i > 400) throw Error("weierstrass_half_period: no zero of P' found");
    lo = hi;
    hi += step;
  }
  for (int i = 0; i < 200 && hi - lo > 4 * std::numeric_limits<double>::epsilon() * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (raw_dp(mid, g3) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::shared_mutex g_period_mutex;
std::map<double, double>& period_cache() {
  static std::map<double, double> cache;
  return cache;
}

}  // namespace

double weierstrass_half_period(double g3) {
  if (g3 == 0.0) return std::numeric_limits<double>::infinity();
  {
    std::shared_lock lock(g_period_mutex);
    const auto it = period_cache().find(g3);
    if (it != period_cache().end()) return it->second;
  }
  const double omega = locate_half_period(g3);
  std::unique_lock lock(g_period_mutex);
  return period_cache().emplace(g3, omega).first->second;
}

WeierstrassValue wp(double z, double g3, double pole_radius) {
  if (!std::isfinite(z)) throw DomainError("wp: non-finite argument");
  double reduced = z;
  if (g3 != 0.0) {
    const double period = 2.0 * weierstrass_half_period(g3);
    reduced = z - period * std::nearbyint(z / period);
  }
  if (std::abs(reduced) < pole_radius) {
    throw PoleError("wp: argument " + std::to_string(z) + " within pole radius of lattice point " +
                        std::to_string(z - reduced),
                    z - reduced);
  }
  const double w = std::abs(reduced);
  const auto [p, dp] = weierstrass_raw(w, g3, weierstrass_duplications(w, g3));
  return {p, reduced < 0.0 ? -dp : dp};
}

std::array<double, kJetOrder + 1> wp_derivatives(double z, double g3, double pole_radius) {
  const auto v = wp(z, g3, pole_radius);
  const double p = v.p, d = v.dp;
  return {p, d, 6.0 * p * p, 12.0 * p * d, 12.0 * d * d + 72.0 * p * p * p};
}

JacobiTriple<double> jacobi_sn_cn_dn(double u, double k) { return jacobi_elliptic(u, k); }

double sn_imaginary_modulus(double u) {
  if (!std::isfinite(u)) throw DomainError("sn_imaginary_modulus: non-finite argument");
  return sn_imaginary_modulus_t(u);
}

double hyp2f1(double a, double b, double c, double z) { return hyp2f1_t(a, b, c, z); }

}  // namespace ewh
