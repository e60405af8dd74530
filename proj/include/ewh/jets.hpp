#pragma once

// Truncated multivariate Taylor arithmetic ("jets") through total order 4.
//
// A Jet<N> stores the Taylor coefficients of a smooth function of N variables
// at a base point, indexed by multi-indices of total degree <= 4. Products
// follow the truncated Cauchy rule, so every coefficient that survives
// truncation is exact. Elementary functions are applied by composing their
// one-variable Taylor series with the argument's jet.

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "ewh/errors.hpp"

namespace ewh {

inline constexpr int kJetOrder = 4;

namespace detail {

constexpr int binomial(int n, int k) {
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

constexpr int ipow(int base, int e) {
  int r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

constexpr double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

template <int N>
struct JetLayout {
  static constexpr int kSize = binomial(N + kJetOrder, kJetOrder);
  static constexpr int kDense = ipow(kJetOrder + 1, N);

  std::array<std::array<int, N>, kSize> index{};
  std::array<int, kSize> degree{};
  std::array<int, kDense> flat{};  // dense (base-5) code -> flat slot, -1 if degree > 4

  struct Term {
    int a, b, out;
  };
  static constexpr int count_terms() {
    // number of pairs (alpha, beta) with |alpha| + |beta| <= 4 in N variables
    return binomial(2 * N + kJetOrder, kJetOrder);
  }
  std::array<Term, count_terms()> product{};

  // shift[v][slot]: slot of index + e_v (or -1)
  std::array<std::array<int, kSize>, N> raise{};

  static constexpr int code(const std::array<int, N>& m) {
    int c = 0;
    for (int v = N - 1; v >= 0; --v) c = c * (kJetOrder + 1) + m[v];
    return c;
  }

  constexpr JetLayout() {
    for (auto& f : flat) f = -1;
    int slot = 0;
    // graded order: all indices of degree 0, then 1, ...
    for (int d = 0; d <= kJetOrder; ++d) {
      for (int c = 0; c < kDense; ++c) {
        std::array<int, N> m{};
        int rest = c;
        int deg = 0;
        for (int v = 0; v < N; ++v) {
          m[v] = rest % (kJetOrder + 1);
          rest /= (kJetOrder + 1);
          deg += m[v];
        }
        if (deg != d) continue;
        index[slot] = m;
        degree[slot] = d;
        flat[c] = slot;
        ++slot;
      }
    }
    int t = 0;
    for (int a = 0; a < kSize; ++a) {
      for (int b = 0; b < kSize; ++b) {
        if (degree[a] + degree[b] > kJetOrder) continue;
        std::array<int, N> m{};
        for (int v = 0; v < N; ++v) m[v] = index[a][v] + index[b][v];
        product[t++] = Term{a, b, flat[code(m)]};
      }
    }
    for (int v = 0; v < N; ++v) {
      for (int s = 0; s < kSize; ++s) {
        if (degree[s] == kJetOrder) {
          raise[v][s] = -1;
          continue;
        }
        auto m = index[s];
        m[v] += 1;
        raise[v][s] = flat[code(m)];
      }
    }
  }
};

template <int N>
inline constexpr JetLayout<N> kLayout{};

}  // namespace detail

template <int N>
class Jet {
 public:
  static constexpr int kVars = N;
  static constexpr int kSize = detail::JetLayout<N>::kSize;
  using MultiIndex = std::array<int, N>;
  using Coeffs = std::array<double, kSize>;

  constexpr Jet() = default;
  constexpr Jet(double value) { c_[0] = value; }  // NOLINT: implicit scalar lift

  static Jet constant(double value) { return Jet(value); }

  // The coordinate function x_v seeded at `value`.
  static Jet variable(int v, double value) {
    Jet j(value);
    j.c_[slot_of(unit(v))] = 1.0;
    return j;
  }

  static Jet from_coeffs(const Coeffs& c) {
    Jet j;
    j.c_ = c;
    return j;
  }

  double value() const { return c_[0]; }
  const Coeffs& coeffs() const { return c_; }
  Coeffs& coeffs() { return c_; }
  double operator[](int slot) const { return c_[slot]; }

  static int slot_of(const MultiIndex& m) {
    int deg = 0;
    for (int v = 0; v < N; ++v) {
      if (m[v] < 0) return -1;
      deg += m[v];
    }
    if (deg > kJetOrder) return -1;
    return layout().flat[detail::JetLayout<N>::code(m)];
  }
  static const MultiIndex& index_of(int slot) { return layout().index[slot]; }
  static int degree_of(int slot) { return layout().degree[slot]; }

  double coeff(const MultiIndex& m) const {
    const int s = slot_of(m);
    return s < 0 ? 0.0 : c_[s];
  }

  // Partial derivative d^|m| / dx^m at the base point: coefficient times m!.
  double partial(const MultiIndex& m) const {
    double f = 1.0;
    for (int v = 0; v < N; ++v) f *= detail::factorial(m[v]);
    return coeff(m) * f;
  }

  // First partial in variable v (convenience for N = 1 and tensor code).
  double d(int v) const { return c_[slot_of(unit(v))]; }

  // Jet of the partial derivative d/dx_v. The top order of the result is not
  // known and is left at zero, so the result is exact through order 3.
  Jet derivative(int v) const {
    Jet out;
    const auto& L = layout();
    for (int s = 0; s < kSize; ++s) {
      const int up = L.raise[v][s];
      if (up < 0) continue;
      out.c_[s] = c_[up] * (L.index[s][v] + 1);
    }
    return out;
  }

  Jet operator-() const {
    Jet out;
    for (int s = 0; s < kSize; ++s) out.c_[s] = -c_[s];
    return out;
  }

  Jet& operator+=(const Jet& o) {
    for (int s = 0; s < kSize; ++s) c_[s] += o.c_[s];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int s = 0; s < kSize; ++s) c_[s] -= o.c_[s];
    return *this;
  }
  Jet& operator*=(double k) {
    for (auto& x : c_) x *= k;
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    *this = *this * o;
    return *this;
  }
  Jet& operator/=(const Jet& o) {
    *this = *this / o;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, double k) {
    a.c_[0] += k;
    return a;
  }
  friend Jet operator+(double k, Jet a) {
    a.c_[0] += k;
    return a;
  }
  friend Jet operator-(Jet a, double k) {
    a.c_[0] -= k;
    return a;
  }
  friend Jet operator-(double k, const Jet& a) {
    Jet out = -a;
    out.c_[0] += k;
    return out;
  }
  friend Jet operator*(Jet a, double k) { return a *= k; }
  friend Jet operator*(double k, Jet a) { return a *= k; }
  friend Jet operator/(Jet a, double k) { return a *= (1.0 / k); }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet out;
    for (const auto& t : layout().product) out.c_[t.out] += a.c_[t.a] * b.c_[t.b];
    return out;
  }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
  friend Jet operator/(double k, const Jet& b) { return k * reciprocal(b); }

  friend Jet reciprocal(const Jet& b) {
    const double v = b.value();
    if (v == 0.0 || !std::isfinite(v)) {
      throw SingularPointError("jet division by a value part of zero", v);
    }
    std::array<double, kJetOrder + 1> t{};
    double p = 1.0 / v;
    for (int k = 0; k <= kJetOrder; ++k) {
      t[k] = p;
      p *= -1.0 / v;
    }
    return compose(t, b);
  }

  // Sum_k taylor[k] * (inner - inner.value())^k, evaluated by Horner.
  friend Jet compose(const std::array<double, kJetOrder + 1>& taylor, const Jet& inner) {
    Jet delta = inner;
    delta.c_[0] = 0.0;
    Jet acc(taylor[kJetOrder]);
    for (int k = kJetOrder - 1; k >= 0; --k) {
      acc = acc * delta;
      acc.c_[0] += taylor[k];
    }
    return acc;
  }

 private:
  static const detail::JetLayout<N>& layout() { return detail::kLayout<N>; }
  static MultiIndex unit(int v) {
    MultiIndex m{};
    m[v] = 1;
    return m;
  }

  Coeffs c_{};
};

using Jet1 = Jet<1>;
using Jet3 = Jet<3>;

// Coordinate order for Jet3 and Point.
enum Coord : int { kNu = 0, kR = 1, kX = 2 };

struct Point {
  double nu = 0.0;
  double r = 0.0;
  double x = 0.0;

  double operator[](int i) const { return i == kNu ? nu : (i == kR ? r : x); }
  double& operator[](int i) { return i == kNu ? nu : (i == kR ? r : x); }
};

// Univariate jet from the derivatives h, h', ..., h'''' at a point.
Jet1 jet1_from_derivatives(const std::array<double, kJetOrder + 1>& derivs);

// The derivative values h^(k) = k! * coeff[k].
std::array<double, kJetOrder + 1> derivatives_of(const Jet1& f);

// d/dx of a univariate jet (exact through order 3).
Jet1 differentiate(const Jet1& f);

// Antiderivative with value `base` at the jet's base point; exact through
// order 4 because only coefficients 0..3 of f are consumed.
Jet1 antiderivative(const Jet1& f, double base);

// Substitute a univariate jet into a multivariate argument: given the Taylor
// data of h at inner.value(), return the jet of h(inner).
template <int N>
Jet<N> compose(const Jet1& outer, const Jet<N>& inner) {
  std::array<double, kJetOrder + 1> t{};
  for (int k = 0; k <= kJetOrder; ++k) t[k] = outer[k];
  return compose(t, inner);
}

// Elementary functions. Each builds the Taylor coefficients f^(k)(v)/k! of
// the scalar function at the value part v and composes.
namespace jet_detail {
std::array<double, kJetOrder + 1> exp_series(double v);
std::array<double, kJetOrder + 1> log_series(double v);
std::array<double, kJetOrder + 1> sin_series(double v);
std::array<double, kJetOrder + 1> cos_series(double v);
std::array<double, kJetOrder + 1> tan_series(double v);
std::array<double, kJetOrder + 1> tanh_series(double v);
std::array<double, kJetOrder + 1> sinh_series(double v);
std::array<double, kJetOrder + 1> cosh_series(double v);
std::array<double, kJetOrder + 1> pow_series(double v, double p);
std::array<double, kJetOrder + 1> asin_series(double v);
std::array<double, kJetOrder + 1> atan_series(double v);
}  // namespace jet_detail

template <int N>
Jet<N> exp(const Jet<N>& f) {
  return compose(jet_detail::exp_series(f.value()), f);
}
template <int N>
Jet<N> log(const Jet<N>& f) {
  return compose(jet_detail::log_series(f.value()), f);
}
template <int N>
Jet<N> sin(const Jet<N>& f) {
  return compose(jet_detail::sin_series(f.value()), f);
}
template <int N>
Jet<N> cos(const Jet<N>& f) {
  return compose(jet_detail::cos_series(f.value()), f);
}
template <int N>
Jet<N> tan(const Jet<N>& f) {
  return compose(jet_detail::tan_series(f.value()), f);
}
template <int N>
Jet<N> tanh(const Jet<N>& f) {
  return compose(jet_detail::tanh_series(f.value()), f);
}
template <int N>
Jet<N> sinh(const Jet<N>& f) {
  return compose(jet_detail::sinh_series(f.value()), f);
}
template <int N>
Jet<N> cosh(const Jet<N>& f) {
  return compose(jet_detail::cosh_series(f.value()), f);
}
template <int N>
Jet<N> sqrt(const Jet<N>& f) {
  if (!(f.value() > 0.0)) throw SingularPointError("sqrt of non-positive jet", f.value());
  return compose(jet_detail::pow_series(f.value(), 0.5), f);
}
template <int N>
Jet<N> pow(const Jet<N>& f, double p) {
  return compose(jet_detail::pow_series(f.value(), p), f);
}
template <int N>
Jet<N> asin(const Jet<N>& f) {
  return compose(jet_detail::asin_series(f.value()), f);
}
template <int N>
Jet<N> atan(const Jet<N>& f) {
  return compose(jet_detail::atan_series(f.value()), f);
}

// Scalar overloads so generic code can be written once for double and jets.
inline double value_of(double v) { return v; }
template <int N>
double value_of(const Jet<N>& j) {
  return j.value();
}

}  // namespace ewh
