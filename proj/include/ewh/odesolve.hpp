#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace ewh {

using State = std::vector<double>;

// dy/dx = rhs(x, y); writes into dydx.
using OdeRhs = std::function<void(double x, std::span<const double> y, std::span<double> dydx)>;

// Returns true when the integration must stop before evaluating rhs at (x, y).
using OdeGuard = std::function<bool(double x, std::span<const double> y)>;

inline constexpr double kDefaultRelTol = 1e-10;
inline constexpr double kDefaultAbsTol = 1e-12;

struct IvpSpec {
  std::size_t dimension = 0;
  OdeRhs rhs;
  double x0 = 0.0;
  State y0;
  double rel_tol = kDefaultRelTol;
  double abs_tol = kDefaultAbsTol;
  double max_step = std::numeric_limits<double>::infinity();
  OdeGuard guard;  // optional
  long max_steps = 1'000'000;
};

enum class StopReason { kCompleted, kGuard, kMaxSteps };

std::string to_string(StopReason r);

// Dense output of an accepted integration: one segment per accepted step,
// each carrying the continuous extension of the Dormand-Prince pair.
class Trajectory {
 public:
  struct Segment {
    double x = 0.0;
    double h = 0.0;
    std::array<State, 5> rcont;
  };

  double x_begin() const { return x_begin_; }
  double x_end() const { return x_end_; }
  StopReason stop_reason() const { return stop_; }
  bool completed() const { return stop_ == StopReason::kCompleted; }
  std::size_t steps() const { return segments_.size(); }
  std::size_t dimension() const { return dim_; }
  const std::vector<Segment>& segments() const { return segments_; }
  // Largest accepted scaled local error estimate (<= 1 when tolerances were met).
  double max_error_norm() const { return max_err_; }

  bool contains(double x) const;
  // State at x by 4th-order dense interpolation; x must lie in the covered range.
  State at(double x) const;
  // Same, on a specific segment (theta = 0 and 1 give its endpoints).
  State interpolate(std::size_t segment, double theta) const;
  State final_state() const;

 private:
  friend Trajectory integrate(const IvpSpec& spec, double x_end);
  double x_begin_ = 0.0;
  double x_end_ = 0.0;
  std::size_t dim_ = 0;
  StopReason stop_ = StopReason::kCompleted;
  double max_err_ = 0.0;
  std::vector<Segment> segments_;
  State initial_;
};

// Embedded Runge-Kutta 5(4) (Dormand-Prince) with proportional-integral step
// control. Guard stops return a partial trajectory; step-size underflow
// throws StiffnessError.
Trajectory integrate(const IvpSpec& spec, double x_end);

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_intervals = 4000;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

// Globally adaptive Gauss-Kronrod (7/15) quadrature. The interval with the
// largest error is bisected first, ties going to the leftmost, so the
// subdivision sequence is deterministic. Throws AccuracyError with the best
// estimate and its bound when the interval cap is hit.
QuadResult quad(const std::function<double(double)>& f, double a, double b,
                const QuadOptions& options = {});

}  // namespace ewh
