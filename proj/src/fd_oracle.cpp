#include "ewh/fd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ewh {

namespace {

struct Stencil {
  std::vector<int> offsets;
  std::vector<double> weights;  // multiply by step^-order
};

// Second-order accurate central stencils.
const Stencil& stencil(int order) {
  static const std::array<Stencil, 5> table = {{
      {{0}, {1.0}},
      {{-1, 1}, {-0.5, 0.5}},
      {{-1, 0, 1}, {1.0, -2.0, 1.0}},
      {{-2, -1, 1, 2}, {-0.5, 1.0, -1.0, 0.5}},
      {{-2, -1, 0, 1, 2}, {1.0, -4.0, 6.0, -4.0, 1.0}},
  }};
  return table.at(order);
}

double tensor_difference(const ScalarFn3& f, const Point& p, const std::array<int, 3>& m,
                         double h) {
  const Stencil& s0 = stencil(m[0]);
  const Stencil& s1 = stencil(m[1]);
  const Stencil& s2 = stencil(m[2]);
  double acc = 0.0;
  for (std::size_t i = 0; i < s0.offsets.size(); ++i) {
    for (std::size_t j = 0; j < s1.offsets.size(); ++j) {
      for (std::size_t k = 0; k < s2.offsets.size(); ++k) {
        Point q{p.nu + s0.offsets[i] * h, p.r + s1.offsets[j] * h, p.x + s2.offsets[k] * h};
        acc += s0.weights[i] * s1.weights[j] * s2.weights[k] * f(q);
      }
    }
  }
  return acc / std::pow(h, m[0] + m[1] + m[2]);
}

}  // namespace

double fd_step(int total_order) {
  const double eps = std::numeric_limits<double>::epsilon();
  return std::max(kFdBaseStep, std::pow(eps, 1.0 / (total_order + 4)));
}

double fd_oracle(const ScalarFn3& f, const Point& p, const std::array<int, 3>& multi_index) {
  const int order = multi_index[0] + multi_index[1] + multi_index[2];
  if (order > kJetOrder || multi_index[0] < 0 || multi_index[1] < 0 || multi_index[2] < 0) {
    throw std::invalid_argument("fd_oracle: multi-index of total order > 4");
  }
  if (order == 0) return f(p);
  const double h = fd_step(order);
  const double coarse = tensor_difference(f, p, multi_index, h);
  const double fine = tensor_difference(f, p, multi_index, 0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

double fd_oracle_1d(const std::function<double(double)>& f, double x, int order) {
  return fd_oracle([&f](const Point& q) { return f(q.x); }, Point{0.0, 0.0, x}, {0, 0, order});
}

}  // namespace ewh
