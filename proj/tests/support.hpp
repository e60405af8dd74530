#pragma once

// Shared test helpers: seeded randomness, a random expression generator for
// jet-versus-finite-difference comparisons, and curvature assembled from
// finite-difference metric derivatives.

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "ewh/curvature.hpp"
#include "ewh/fd_oracle.hpp"
#include "ewh/jets.hpp"

namespace ewh::test {

inline std::mt19937_64 make_rng(unsigned long long seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// ---------------------------------------------------------------------------
// Random smooth expressions over (nu, r, x), evaluable on doubles and jets.

enum class Op { kAdd, kSub, kMul, kDivSafe, kExp, kSin, kCos, kTanh, kSqrtSafe, kLogSafe, kAtan };

struct Instr {
  Op op;
  int a, b;
  double k;
};

struct Program {
  std::vector<Instr> code;

  template <class T>
  T operator()(const T& nu, const T& r, const T& x) const {
    using std::atan;
    using std::cos;
    using std::exp;
    using std::log;
    using std::sin;
    using std::sqrt;
    using std::tanh;
    std::vector<T> reg = {nu, r, x};
    for (const auto& in : code) {
      const T& a = reg[in.a];
      const T& b = reg[in.b];
      switch (in.op) {
        case Op::kAdd:
          reg.push_back(a + in.k * b);
          break;
        case Op::kSub:
          reg.push_back(in.k * a - b);
          break;
        case Op::kMul:
          reg.push_back(a * b);
          break;
        case Op::kDivSafe:
          reg.push_back(a / (1.5 + b * b));
          break;
        case Op::kExp:
          reg.push_back(exp(in.k * a));
          break;
        case Op::kSin:
          reg.push_back(sin(in.k * a + b));
          break;
        case Op::kCos:
          reg.push_back(cos(in.k * a));
          break;
        case Op::kTanh:
          reg.push_back(tanh(in.k * a));
          break;
        case Op::kSqrtSafe:
          reg.push_back(sqrt(1.0 + a * a));
          break;
        case Op::kLogSafe:
          reg.push_back(log(2.0 + sin(a)));
          break;
        case Op::kAtan:
          reg.push_back(atan(in.k * a));
          break;
      }
    }
    return reg.back();
  }
};

inline Program random_program(std::mt19937_64& g, int length = 5) {
  Program p;
  std::uniform_int_distribution<int> op(0, 10);
  for (int i = 0; i < length; ++i) {
    const int n = 3 + i;
    std::uniform_int_distribution<int> pick(0, n - 1);
    // favour recent registers so the expression stays connected
    const int a = std::max(pick(g), n - 2);
    p.code.push_back({static_cast<Op>(op(g)), a, pick(g), uniform(g, -0.8, 0.8)});
  }
  return p;
}

inline Jet3 program_jet(const Program& prog, const Point& p) {
  return prog(Jet3::variable(kNu, p.nu), Jet3::variable(kR, p.r), Jet3::variable(kX, p.x));
}

inline ScalarFn3 program_fn(const Program& prog) {
  return [prog](const Point& q) { return prog(q.nu, q.r, q.x); };
}

// All multi-indices of total order 1..4.
inline std::vector<std::array<int, 3>> multi_indices(int max_order = kJetOrder) {
  std::vector<std::array<int, 3>> out;
  for (int i = 0; i <= max_order; ++i)
    for (int j = 0; i + j <= max_order; ++j)
      for (int k = 0; i + j + k <= max_order; ++k)
        if (i + j + k > 0) out.push_back({i, j, k});
  return out;
}

// ---------------------------------------------------------------------------
// Curvature from finite-difference metric jets.

inline Jet3 fd_jet(const ScalarFn3& f, const Point& p, int max_order) {
  Jet3::Coeffs c{};
  c[0] = f(p);
  for (const auto& m : multi_indices(max_order)) {
    c[Jet3::slot_of(m)] = fd_oracle(f, p, m) / (factorial(m[0]) * factorial(m[1]) * factorial(m[2]));
  }
  return Jet3::from_coeffs(c);
}

inline JetMatrix fd_metric_jets(const MetricField& g, const Point& p, int max_order = 3) {
  JetMatrix m{};
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      m[a][b] = fd_jet([&g, a, b](const Point& q) { return g.values(q)[a][b]; }, p, max_order);
      m[b][a] = m[a][b];
    }
  }
  return m;
}

inline CurvaturePack fd_curvature(const MetricField& g, const Point& p) {
  return curvature_from_jets(fd_metric_jets(g, p));
}

}  // namespace ewh::test
