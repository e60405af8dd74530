#include <doctest.h>

#include <cmath>

#include "ewh/fd_oracle.hpp"
#include "ewh/specfun.hpp"

using namespace ewh;

TEST_CASE("second x-derivative of x^2") {
  for (double x : {-1.3, 0.0, 2.7}) {
    const double d2 = fd_oracle([](const Point& p) { return p.x * p.x; }, {0.1, -0.4, x}, {0, 0, 2});
    CHECK(std::abs(d2 - 2.0) < 1e-8);
  }
}

TEST_CASE("mixed partial of sin(x) cos(nu)") {
  const Point p{0.3, 0.0, 0.7};
  const double got = fd_oracle([](const Point& q) { return std::sin(q.x) * std::cos(q.nu); }, p, {1, 0, 1});
  CHECK(std::abs(got - (-std::cos(0.7) * std::sin(0.3))) < 1e-6);
}

TEST_CASE("second derivative of the Weierstrass function") {
  const double z = 1.5, b = 1.0;
  const double got = fd_oracle([b](const Point& q) { return wp(q.x, b).p; }, {0, 0, z}, {0, 0, 2});
  const double P = wp(z, b).p;
  CHECK(std::abs(got - 6.0 * P * P) < 1e-5);
}

TEST_CASE("orders above four are rejected") {
  CHECK_THROWS(fd_oracle([](const Point&) { return 0.0; }, {}, {2, 2, 1}));
}

TEST_CASE("fourth derivatives are roundoff-limited but within the comparison tolerance") {
  const double got = fd_oracle_1d([](double x) { return std::exp(0.5 * x); }, 0.2, 4);
  CHECK(std::abs(got - std::exp(0.1) / 16.0) < 5e-6);
}

TEST_CASE("Richardson extrapolation: error falls by about 16x when the step halves") {
  // exercised on the underlying second-order stencil through first derivatives,
  // where roundoff is negligible at these steps
  const double x0 = 0.4;
  const double exact = std::cos(x0);
  auto central = [x0](double h) { return (std::sin(x0 + h) - std::sin(x0 - h)) / (2 * h); };
  auto richardson = [&](double h) { return (4.0 * central(0.5 * h) - central(h)) / 3.0; };
  const double e1 = std::abs(richardson(0.1) - exact), e2 = std::abs(richardson(0.05) - exact);
  CHECK(e1 / e2 > 14.0);
  CHECK(std::abs(fd_oracle_1d([](double x) { return std::sin(x); }, x0, 1) - exact) < 1e-12);
}
