#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ewh/errors.hpp"
#include "ewh/nearhorizon.hpp"
#include "ewh/specfun.hpp"
#include "support.hpp"

using namespace ewh;

namespace {

// Interior samples of a family window, matching the CLI's default x-axis.
std::vector<double> window_samples(const Window& w, int n = 41) {
  double lo = -1.0, hi = 1.0;
  if (w.bounded()) {
    const double pad = 0.05 * (w.hi - w.lo);
    lo = w.lo + pad;
    hi = w.hi - pad;
  } else if (std::isfinite(w.lo)) {
    lo = w.lo + 0.5;
    hi = w.lo + 2.5;
  } else if (std::isfinite(w.hi)) {
    lo = w.hi - 2.5;
    hi = w.hi - 0.5;
  }
  std::vector<double> xs;
  for (int i = 0; i < n; ++i) xs.push_back(lo + (hi - lo) * i / (n - 1));
  return xs;
}

double max_ode4(const FamilyInstance& f) {
  double worst = 0.0;
  for (double x : window_samples(f.window)) worst = std::max(worst, std::abs(ode4_residual(f.h.at(x), f.c)));
  return worst;
}

struct Named {
  std::string name;
  FamilyTag tag;
  ParamMap params;
};

}  // namespace

TEST_CASE("catalogue examples") {
  SUBCASE("linear") {
    const auto f = family_catalog(FamilyTag::kLinear, {{"l", 1.0}, {"b", 0.0}});
    CHECK(f.h.value(2.0) == 2.0);
    CHECK(f.c == 1.0);
    CHECK_FALSE(f.window.bounded());
    CHECK(std::isinf(f.window.lo));
  }
  SUBCASE("rational 2/(alpha (x - b))") {
    const auto f = family_catalog(FamilyTag::kRationalPole, {{"alpha", 1.0}, {"b", 0.0}});
    CHECK(f.h.value(3.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(f.c == 1.0);
    CHECK(f.window.lo > 0.0);
    CHECK(f.window.lo < 0.05);
    CHECK_THROWS_AS(f.h.checked(-1.0), WindowError);
  }
  SUBCASE("tanh family at c = l = -1 is bounded and solves h'' = 2 h h'") {
    const auto f = family_catalog(FamilyTag::kTanhHyperCR, {{"c", -1.0}, {"l", -1.0}, {"b", 0.0}});
    for (double x : {-30.0, -1.0, 0.0, 2.0, 30.0}) {
      CHECK(std::abs(f.h.value(x)) <= 1.0);
      CHECK(std::abs(ode2_residual(f.h.at(x), 2.0, 0.0)) < 1e-14);
      CHECK(std::abs(f.h.value(x) + std::tanh(x)) < 1e-15);
    }
  }
}

TEST_CASE("catalogue families solve the fourth-order ODE with their c") {
  const std::vector<Named> families = {
      {"linear", FamilyTag::kLinear, {{"l", 1.3}, {"b", -0.4}}},
      {"quadratic", FamilyTag::kQuadratic, {{"b", 0.7}}},
      {"1/(x-b)", FamilyTag::kRationalPole, {{"gamma", 1.0}, {"b", 0.2}}},
      {"2/(alpha(x-b))", FamilyTag::kRationalPole, {{"alpha", 0.8}, {"b", 0.0}}},
      {"-1/(alpha(x-b))", FamilyTag::kRationalPole, {{"alpha", 0.8}, {"branch", 2.0}, {"b", 0.0}}},
      {"-1/(alpha(x-b)) left", FamilyTag::kRationalPole, {{"alpha", -1.5}, {"branch", 2.0}, {"side", -1.0}}},
      {"tan c=2", FamilyTag::kTanFamily, {{"c", 2.0}, {"l", -1.0}}},
      {"tan c=0 branch 2", FamilyTag::kTanFamily, {{"c", 0.0}, {"l", 1.0}, {"branch", 2.0}, {"b", 0.3}}},
      {"tan c=-1", FamilyTag::kTanFamily, {{"c", -1.0}, {"l", 0.5}}},
      {"tanh c=-1", FamilyTag::kTanhHyperCR, {{"c", -1.0}, {"l", -1.0}, {"b", 0.5}}},
  };
  for (const auto& n : families) {
    const FamilyInstance f = family_catalog(n.tag, n.params);
    CHECK_MESSAGE(max_ode4(f) < 1e-9, n.name);
    if (f.ode2) {
      for (double x : window_samples(f.window, 9)) {
        CHECK_MESSAGE(std::abs(ode2_residual(f.h.at(x), f.ode2->first, f.ode2->second)) < 1e-10, n.name);
      }
      CHECK(std::abs(reduction_consistency(f.ode2->first, f.c) - f.ode2->second) < 1e-12);
    }
  }
}

TEST_CASE("tanh form away from c = -1 solves its second-order ODE but not the fourth-order one") {
  const FamilyInstance f = family_catalog(FamilyTag::kTanhHyperCR, {{"c", 2.0}, {"l", 0.5}});
  CHECK(std::abs(ode2_residual(f.h.at(0.3), -4.0, 0.0)) < 1e-14);
  CHECK(max_ode4(f) > 1e-3);
}

TEST_CASE("c = 1 first integrals") {
  const auto quad = family_catalog(FamilyTag::kQuadratic, {{"b", 0.7}});
  const auto rat = family_catalog(FamilyTag::kRationalPole, {{"gamma", 1.0}, {"b", 0.2}});
  for (const auto* f : {&quad, &rat}) {
    REQUIRE(f->first_integral);
    CHECK(*f->first_integral == 0.0);
    for (double x : window_samples(f->window, 11)) CHECK(std::abs(ode3_first_integral(f->h.at(x))) < 1e-12);
  }
  for (double l : {1.0, -0.6, 2.0}) {
    const auto lin = family_catalog(FamilyTag::kLinear, {{"l", l}, {"b", 0.3}});
    REQUIRE(lin.first_integral);
    CHECK(*lin.first_integral == -0.5 * l * l * l);
    for (double x : window_samples(lin.window, 11)) {
      CHECK(ode3_first_integral(lin.h.at(x)) == doctest::Approx(-0.5 * l * l * l).epsilon(1e-13));
    }
  }
}

TEST_CASE("tan family is periodic but not globally defined") {
  const auto f = family_catalog(FamilyTag::kTanFamily, {{"c", 2.0}, {"l", -1.0}, {"b", 0.1}});
  REQUIRE(f.h.period());
  const double T = *f.h.period();
  const double k = std::numbers::pi / T;
  CHECK(T == doctest::Approx(std::numbers::pi / (0.5 * std::sqrt(2.0 * -1.0 * f.params.at("alpha")))));
  CHECK(periodicity_check(f.h, T));
  CHECK_FALSE(periodicity_check(f.h, 0.5 * T));
  // pole at k (x + b) = pi / 2 lies just outside the window
  CHECK(f.window.hi < std::numbers::pi / (2 * k) - 0.1);
  CHECK_THROWS_AS(f.h.checked(std::numbers::pi / (2 * k) - 0.1), WindowError);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(family_catalog(FamilyTag::kTanFamily, {{"c", 1.0}}), DomainError);
  CHECK_THROWS_AS(family_catalog(FamilyTag::kTanFamily, {{"c", 2.0}, {"l", 1.0}}), DomainError);
  CHECK_THROWS_AS(family_catalog(FamilyTag::kTanhHyperCR, {{"c", -1.0}, {"l", 1.0}}), DomainError);
  CHECK_THROWS_AS(family_catalog(FamilyTag::kRationalPole, {{"c", 3.0}, {"gamma", 1.0}}), DomainError);
  CHECK_THROWS_AS(family_catalog(FamilyTag::kJacobiReduction, {{"c", 1.0}}), DomainError);
  CHECK_THROWS_AS(family_catalog(FamilyTag::kHypergeometricParametric, {{"beta", 2.0}, {"c", 3.0}}), DomainError);
  CHECK_THROWS_AS(family_catalog(FamilyTag::kNumericODE, {{"c", 1.0}}), Error);
  CHECK_THROWS_AS(family_tag_from_string("elliptic"), Error);
}

TEST_CASE("tag names round-trip") {
  for (FamilyTag t : {FamilyTag::kWeierstrass, FamilyTag::kJacobiReduction, FamilyTag::kHypergeometricParametric,
                      FamilyTag::kTanFamily, FamilyTag::kTanhHyperCR, FamilyTag::kLinear, FamilyTag::kRationalPole,
                      FamilyTag::kQuadratic, FamilyTag::kNumericODE}) {
    CHECK(family_tag_from_string(to_string(t)) == t);
  }
}

TEST_CASE("Jacobi reduction: h'' = 2 (c-1)^2 h^3 and the fourth-order ODE") {
  for (double c : {0.0, -1.0, 2.5}) {
    const auto f = family_catalog(FamilyTag::kJacobiReduction, {{"c", c}, {"mu", 0.8}});
    for (double x : window_samples(f.window, 21)) {
      const Jet1 h = f.h.at(x);
      const double scale = std::max(1.0, std::pow(std::abs(h.value()), 6));
      CHECK(std::abs(ode2_residual(h, 0.0, 2 * (c - 1) * (c - 1))) / std::max(1.0, std::pow(std::abs(h.value()), 3)) < 1e-10);
      CHECK(std::abs(ode4_residual(h, c)) / scale < 1e-10);
    }
    REQUIRE(f.h.period());
    CHECK(periodicity_check(f.h, *f.h.period()));
  }
}

TEST_CASE("Jacobi reduction matches the integrated ODE") {
  const double c = 0.0;
  const auto f = family_catalog(FamilyTag::kJacobiReduction, {{"c", c}});
  const double x0 = window_samples(f.window).front();
  const auto d = derivatives_of(f.h.at(x0));
  const auto num = family_catalog(FamilyTag::kNumericODE,
                                  {{"c", c}, {"x0", x0}, {"h0", d[0]}, {"h1", d[1]}, {"h2", d[2]}, {"h3", d[3]}, {"span", 1.0}});
  for (double x : {x0 + 0.2, x0 + 0.6, x0 + 1.0}) {
    if (!f.window.contains(x)) continue;
    CHECK(test::rel_err(num.h.value(x), f.h.value(x)) < 1e-7);
  }
}

TEST_CASE("hypergeometric family solves h'' = beta h^3 for several (beta, gamma)") {
  for (const auto& [beta, gamma] : std::vector<std::pair<double, double>>{{2.0, 1.0}, {0.5, 2.0}, {8.0, 0.7}}) {
    const auto f = family_catalog(FamilyTag::kHypergeometricParametric, {{"beta", beta}, {"gamma", gamma}});
    CHECK(std::abs(2 * (f.c - 1) * (f.c - 1) - beta) < 1e-12);
    for (double x : window_samples(f.window, 15)) {
      const Jet1 h = f.h.at(x);
      CHECK(std::abs(ode2_residual(h, 0.0, beta)) < 1e-7);
      CHECK(std::abs(ode4_residual(h, f.c)) < 1e-7);
    }
    // h(x(z)) = gamma beta^{-1/4} (1 - z)^{-1/4}
    for (double z : {0.1, 0.3, 0.5}) {
      const AbelPoint p = abel_hypergeometric(z, beta, gamma);
      CHECK(std::abs(f.h.value(p.x) - p.h) < 1e-9);
    }
  }
}

TEST_CASE("Weierstrass family: F equation on a pole-free window") {
  for (double b : {1.0, 0.5, -1.0}) {
    const auto f = family_catalog(FamilyTag::kWeierstrass, {{"a", 1.2}, {"b", b}});
    REQUIRE(f.F);
    CHECK(f.c == -0.5);
    for (double x : window_samples(f.window, 21)) {
      const Jet1 F = f.F->at(x);
      CHECK(std::abs(F_ode_residual_chalf(F, f.h.at(x))) / std::max(1.0, F.value() * F.value()) < 1e-9);
    }
  }
}

TEST_CASE("numeric family at c = 1 follows the quadratic seed") {
  const double b = 0.0, x0 = 1.0;
  const auto d = derivatives_of(family_catalog(FamilyTag::kQuadratic, {{"b", b}}).h.at(x0));
  const auto f = family_catalog(FamilyTag::kNumericODE,
                                {{"c", 1.0}, {"x0", x0}, {"h0", d[0]}, {"h1", d[1]}, {"h2", d[2]}, {"h3", d[3]}});
  CHECK(f.window.lo == x0);
  CHECK(f.window.hi == doctest::Approx(x0 + 2.0));
  for (double x : window_samples(f.window, 11)) {
    CHECK(std::abs(f.h.value(x) - x * x) < 1e-7);
    CHECK(std::abs(ode4_residual(f.h.at(x), 1.0)) < 1e-9);
  }
}

TEST_CASE("parameters are recorded with c") {
  const auto f = family_catalog(FamilyTag::kTanFamily, {{"l", -1.0}});
  CHECK(f.params.at("c") == 2.0);
  CHECK(f.params.at("l") == -1.0);
  CHECK(f.params.at("alpha") == -1.0);
}
