#include "ewh/odesolve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "ewh/errors.hpp"

namespace ewh {

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::kCompleted:
      return "completed";
    case StopReason::kGuard:
      return "guard";
    case StopReason::kMaxSteps:
      return "max-steps";
  }
  return "unknown";
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// continuous extension (Hairer & Wanner, dopri5)
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

// step control
constexpr double kSafety = 0.9;
constexpr double kBeta = 0.04;
constexpr double kExpo1 = 0.2 - kBeta * 0.75;
constexpr double kFacMin = 0.2;   // largest shrink 1/5
constexpr double kFacMax = 10.0;  // largest growth

double error_norm(const State& y0, const State& y1, const State& err, double rtol, double atol) {
  double s = 0.0;
  for (std::size_t i = 0; i < y0.size(); ++i) {
    const double sk = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double q = err[i] / sk;
    s += q * q;
  }
  return std::sqrt(s / static_cast<double>(y0.size()));
}

double initial_step(const IvpSpec& spec, const State& f0, double dir) {
  double d0 = 0.0, d1n = 0.0;
  for (std::size_t i = 0; i < spec.dimension; ++i) {
    const double sk = spec.abs_tol + spec.rel_tol * std::abs(spec.y0[i]);
    d0 += (spec.y0[i] / sk) * (spec.y0[i] / sk);
    d1n += (f0[i] / sk) * (f0[i] / sk);
  }
  d0 = std::sqrt(d0 / spec.dimension);
  d1n = std::sqrt(d1n / spec.dimension);
  double h = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
  return dir * std::min(h, spec.max_step);
}

}  // namespace

bool Trajectory::contains(double x) const {
  const double lo = std::min(x_begin_, x_end_), hi = std::max(x_begin_, x_end_);
  return x >= lo && x <= hi;
}

State Trajectory::interpolate(std::size_t segment, double theta) const {
  const Segment& s = segments_.at(segment);
  const double t1 = 1.0 - theta;
  State y(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    y[i] = s.rcont[0][i] +
           theta * (s.rcont[1][i] +
                    t1 * (s.rcont[2][i] + theta * (s.rcont[3][i] + t1 * s.rcont[4][i])));
  }
  return y;
}

State Trajectory::at(double x) const {
  if (!contains(x)) throw std::out_of_range("Trajectory::at outside integrated range");
  if (segments_.empty()) return initial_;
  // segments are ordered along the integration direction
  const bool forward = x_end_ >= x_begin_;
  std::size_t lo = 0, hi = segments_.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi + 1) / 2;
    const bool past = forward ? segments_[mid].x <= x : segments_[mid].x >= x;
    if (past) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  const Segment& s = segments_[lo];
  return interpolate(lo, std::clamp((x - s.x) / s.h, 0.0, 1.0));
}

State Trajectory::final_state() const {
  if (segments_.empty()) return initial_;
  return interpolate(segments_.size() - 1, 1.0);
}

Trajectory integrate(const IvpSpec& spec, double x_end) {
  const std::size_t n = spec.dimension;
  if (n == 0 || spec.y0.size() != n) throw std::invalid_argument("integrate: dimension mismatch");
  if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0)) {
    throw std::invalid_argument("integrate: tolerances must be positive");
  }
  Trajectory traj;
  traj.dim_ = n;
  traj.x_begin_ = spec.x0;
  traj.x_end_ = spec.x0;
  traj.initial_ = spec.y0;
  if (spec.guard && spec.guard(spec.x0, spec.y0)) {
    traj.stop_ = StopReason::kGuard;
    return traj;
  }
  if (x_end == spec.x0) return traj;

  const double dir = x_end > spec.x0 ? 1.0 : -1.0;
  State y = spec.y0, y1(n), ytmp(n), err(n);
  std::array<State, 7> k;
  for (auto& ki : k) ki.assign(n, 0.0);
  auto f = [&](double xx, const State& yy, State& out) { spec.rhs(xx, yy, out); };

  double x = spec.x0;
  f(x, y, k[0]);
  double h = initial_step(spec, k[0], dir);
  double fac_old = 1e-4;
  bool rejected = false;
  long steps = 0;

  while (dir * (x_end - x) > 0.0) {
    if (steps++ >= spec.max_steps) {
      traj.stop_ = StopReason::kMaxSteps;
      return traj;
    }
    if (dir * (x + h - x_end) > 0.0) h = x_end - x;
    if (std::abs(h) > spec.max_step) h = dir * spec.max_step;
    if (std::abs(h) <= 1e-14 * std::max(1.0, std::abs(x))) {
      throw StiffnessError("integrate: step size underflow at x = " + std::to_string(x), x);
    }

    auto stage = [&](const std::initializer_list<std::pair<int, double>>& terms) {
      for (std::size_t i = 0; i < n; ++i) {
        double acc = y[i];
        for (const auto& [j, a] : terms) acc += h * a * k[j][i];
        ytmp[i] = acc;
      }
    };
    stage({{0, a21}});
    f(x + c2 * h, ytmp, k[1]);
    stage({{0, a31}, {1, a32}});
    f(x + c3 * h, ytmp, k[2]);
    stage({{0, a41}, {1, a42}, {2, a43}});
    f(x + c4 * h, ytmp, k[3]);
    stage({{0, a51}, {1, a52}, {2, a53}, {3, a54}});
    f(x + c5 * h, ytmp, k[4]);
    stage({{0, a61}, {1, a62}, {2, a63}, {3, a64}, {4, a65}});
    f(x + h, ytmp, k[5]);
    stage({{0, a71}, {2, a73}, {3, a74}, {4, a75}, {5, a76}});
    y1 = ytmp;
    const double x_new = x + h;
    bool guard_hit = false;
    for (double v : y1) {
      if (!std::isfinite(v)) guard_hit = true;
    }
    if (!guard_hit) f(x_new, y1, k[6]);
    for (std::size_t i = 0; i < n; ++i) {
      err[i] = h * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] + e6 * k[5][i] +
                    e7 * k[6][i]);
    }
    double en = guard_hit ? std::numeric_limits<double>::infinity()
                          : error_norm(y, y1, err, spec.rel_tol, spec.abs_tol);
    if (!std::isfinite(en)) en = 1e10;

    const double fac11 = std::pow(en, kExpo1);
    double fac = fac11 / std::pow(fac_old, kBeta);
    fac = std::clamp(fac / kSafety, 1.0 / kFacMax, 1.0 / kFacMin);
    double h_new = h / fac;

    if (en <= 1.0) {
      fac_old = std::max(en, 1e-4);
      Trajectory::Segment seg;
      seg.x = x;
      seg.h = h;
      for (auto& rc : seg.rcont) rc.assign(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const double dy = y1[i] - y[i];
        const double bspl = h * k[0][i] - dy;
        seg.rcont[0][i] = y[i];
        seg.rcont[1][i] = dy;
        seg.rcont[2][i] = bspl;
        seg.rcont[3][i] = dy - h * k[6][i] - bspl;
        seg.rcont[4][i] = h * (d1 * k[0][i] + d3 * k[2][i] + d4 * k[3][i] + d5 * k[4][i] +
                               d6 * k[5][i] + d7 * k[6][i]);
      }
      traj.segments_.push_back(std::move(seg));
      traj.max_err_ = std::max(traj.max_err_, en);
      k[0] = k[6];
      y = y1;
      x = x_new;
      traj.x_end_ = x;
      if (spec.guard && spec.guard(x, y)) {
        traj.stop_ = StopReason::kGuard;
        return traj;
      }
      if (rejected) h_new = dir * std::min(std::abs(h_new), std::abs(h));
      rejected = false;
    } else {
      h_new = h / std::min(1.0 / kFacMin, fac11 / kSafety);
      rejected = true;
    }
    h = h_new;
  }
  traj.stop_ = StopReason::kCompleted;
  return traj;
}

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights on the odd Kronrod nodes 1, 3, 5 and the centre
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
  double a, b, value, error;
};

Interval gk15(const std::function<double(double)>& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double s = f(centre - dx) + f(centre + dx);
    kron += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  kron *= half;
  gauss *= half;
  return {a, b, kron, std::abs(kron - gauss)};
}

}  // namespace

QuadResult quad(const std::function<double(double)>& f, double a, double b,
                const QuadOptions& options) {
  if (a == b) return {0.0, 0.0, 0};
  std::vector<Interval> parts{gk15(f, a, b)};
  for (;;) {
    double total = 0.0, err = 0.0;
    for (const auto& p : parts) {
      total += p.value;
      err += p.error;
    }
    if (!std::isfinite(total)) {
      throw AccuracyError("quad: integrand produced a non-finite value", total, err);
    }
    const double tol = std::max(options.abs_tol, options.rel_tol * std::abs(total));
    if (err <= tol) return {total, err, static_cast<int>(parts.size())};
    if (static_cast<int>(parts.size()) >= options.max_intervals) {
      throw AccuracyError("quad: interval cap reached before tolerance", total, err);
    }
    std::size_t worst = 0;
    for (std::size_t i = 1; i < parts.size(); ++i) {
      if (parts[i].error > parts[worst].error) worst = i;
    }
    const Interval w = parts[worst];
    const double mid = 0.5 * (w.a + w.b);
    if (!(mid > std::min(w.a, w.b) && mid < std::max(w.a, w.b))) {
      throw AccuracyError("quad: interval cannot be subdivided further", total, err);
    }
    parts[worst] = gk15(f, w.a, mid);
    parts.insert(parts.begin() + static_cast<std::ptrdiff_t>(worst) + 1, gk15(f, mid, w.b));
  }
}

}  // namespace ewh
