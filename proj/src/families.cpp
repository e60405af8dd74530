#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "ewh/errors.hpp"
#include "ewh/nearhorizon.hpp"
#include "ewh/odesolve.hpp"
#include "ewh/specfun.hpp"

namespace ewh {

namespace {

Jet1 var(double x) { return Jet1::variable(0, x); }

double param(const ParamMap& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

bool has(const ParamMap& p, const std::string& key) { return p.count(key) != 0; }

double require(const ParamMap& p, const std::string& key) {
  const auto it = p.find(key);
  if (it == p.end()) throw DomainError("missing family parameter '" + key + "'");
  return it->second;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// H(x) - H(x0) for H' = h.
double primitive_between(const ScalarField1D& h, double x0, double x) {
  if (h.constant()) return *h.constant() * (x - x0);
  if (h.primitive()) return h.primitive()(x) - h.primitive()(x0);
  return quad([&h](double t) { return h.value(t); }, x0, x).value;
}

double complete_elliptic_k(double k) {
  double a = 1.0, b = std::sqrt(1.0 - k * k);
  for (int i = 0; i < 64 && a != b; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return std::numbers::pi / (2.0 * a);
}

}  // namespace

// ---------------------------------------------------------------------------
// Built-in fields

ScalarField1D field_zero() {
  return ScalarField1D("zero", [](double) { return Jet1(0.0); })
      .with_constant(0.0)
      .with_primitive([](double) { return 0.0; });
}

ScalarField1D field_constant(double k) {
  return ScalarField1D(k == 1.0 ? "one" : "const " + fmt(k), [k](double) { return Jet1(k); })
      .with_constant(k)
      .with_primitive([k](double x) { return k * x; });
}

ScalarField1D field_sin() {
  return ScalarField1D("sin", [](double x) { return sin(var(x)); })
      .with_primitive([](double x) { return -std::cos(x); })
      .with_period(2.0 * std::numbers::pi);
}

ScalarField1D field_cos() {
  return ScalarField1D("cos", [](double x) { return cos(var(x)); })
      .with_primitive([](double x) { return std::sin(x); })
      .with_period(2.0 * std::numbers::pi);
}

ScalarField1D field_exp() {
  return ScalarField1D("exp", [](double x) { return exp(var(x)); })
      .with_primitive([](double x) { return std::exp(x); });
}

ScalarField1D field_linear(double l, double b) {
  return ScalarField1D("linear(" + fmt(l) + " x + " + fmt(b) + ")",
                       [l, b](double x) { return l * var(x) + b; })
      .with_primitive([l, b](double x) { return 0.5 * l * x * x + b * x; });
}

ScalarField1D field_exp_primitive(const ScalarField1D& h, double x0) {
  return ScalarField1D("exp(int " + h.label() + ")",
                       [h, x0](double x) {
                         return exp(antiderivative(h.at(x), primitive_between(h, x0, x)));
                       },
                       h.window());
}

// ---------------------------------------------------------------------------
// Weierstrass data

bool weierstrass_closed_form(const ScalarField1D& h) { return h.constant().has_value(); }

NearHorizonData weierstrass_data(const ScalarField1D& h, double a, double b, double x0) {
  auto eval = [h, a, b, x0](double x) {
    const double H0 = primitive_between(h, x0, x);
    const Jet1 H = antiderivative(h.at(x), H0);
    double z0;
    if (h.constant()) {
      const double k = *h.constant();
      z0 = k == 0.0 ? x - x0 : (2.0 / k) * std::expm1(0.5 * k * (x - x0));
    } else {
      z0 = quad([&](double t) { return std::exp(0.5 * primitive_between(h, x0, t)); }, x0, x).value;
    }
    Jet1 z = antiderivative(exp(0.5 * H), z0);
    z = z + a;
    return wp_jet(z, b) * exp(H);
  };
  ScalarField1D F("wp(int e^{H/2} + " + fmt(a) + "; 0, " + fmt(b) + ") e^H", eval, h.window());
  return {h, F, -0.5};
}

// ---------------------------------------------------------------------------
// Catalog

std::string to_string(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::kWeierstrass:
      return "weierstrass";
    case FamilyTag::kJacobiReduction:
      return "jacobi";
    case FamilyTag::kHypergeometricParametric:
      return "hypergeometric";
    case FamilyTag::kTanFamily:
      return "tan";
    case FamilyTag::kTanhHyperCR:
      return "tanh";
    case FamilyTag::kLinear:
      return "linear";
    case FamilyTag::kRationalPole:
      return "rational";
    case FamilyTag::kQuadratic:
      return "quadratic";
    case FamilyTag::kNumericODE:
      return "numeric";
  }
  return "unknown";
}

FamilyTag family_tag_from_string(const std::string& name) {
  for (FamilyTag t :
       {FamilyTag::kWeierstrass, FamilyTag::kJacobiReduction, FamilyTag::kHypergeometricParametric,
        FamilyTag::kTanFamily, FamilyTag::kTanhHyperCR, FamilyTag::kLinear,
        FamilyTag::kRationalPole, FamilyTag::kQuadratic, FamilyTag::kNumericODE}) {
    if (to_string(t) == name) return t;
  }
  throw UsageError("unknown family tag '" + name + "'");
}

NearHorizonData FamilyInstance::data() const {
  return {h, F ? *F : F_from_h_field(h, c), c};
}

namespace {

FamilyInstance make_weierstrass(const ParamMap& p) {
  FamilyInstance fam;
  const double a = param(p, "a", 1.5), b = param(p, "b", 1.0), x0 = param(p, "x0", 0.0);
  const NearHorizonData d = weierstrass_data(field_zero(), a, b, x0);
  fam.h = d.h;
  fam.F = d.F;
  fam.c = d.c;
  // pole-free stretch around the half period: x + a in (delta, 2 omega - delta)
  const double omega = weierstrass_half_period(b);
  const double margin = 0.1 * std::min(omega, 1.0);
  fam.window = std::isinf(omega) ? Window{margin - a, 1e6} : Window{margin - a, 2.0 * omega - margin - a};
  return fam;
}

FamilyInstance make_jacobi(const ParamMap& p) {
  FamilyInstance fam;
  fam.c = param(p, "c", 0.0);
  const double mu = param(p, "mu", 1.0), x0 = param(p, "x0", 0.0);
  if (fam.c == 1.0) throw DomainError("jacobi family needs c != 1");
  if (mu == 0.0) throw DomainError("jacobi family needs mu != 0");
  const double lambda = mu * std::abs(fam.c - 1.0);
  const double kmod = 1.0 / std::sqrt(2.0);
  const double K = complete_elliptic_k(kmod);
  // h = mu ds(lambda (x - x0), 1/sqrt2) solves h'' = 2 (c-1)^2 h^3
  fam.h = ScalarField1D("jacobi ds(mu=" + fmt(mu) + ", c=" + fmt(fam.c) + ")",
                        [mu, lambda, x0, kmod](double x) {
                          const Jet1 u = lambda * (var(x) - x0);
                          const auto j = jacobi_elliptic(u, kmod);
                          return mu * j.dn / j.sn;
                        })
              .with_period(4.0 * K / std::abs(lambda));
  const double e0 = x0 + 0.05 * K / lambda, e1 = x0 + 1.95 * K / lambda;
  fam.window = {std::min(e0, e1), std::max(e0, e1)};
  fam.h = fam.h.with_window(fam.window);
  fam.ode2 = std::make_pair(0.0, 2.0 * (fam.c - 1.0) * (fam.c - 1.0));
  return fam;
}

FamilyInstance make_hypergeometric(const ParamMap& p) {
  FamilyInstance fam;
  const double beta = param(p, "beta", 2.0), gamma = param(p, "gamma", 1.0);
  if (!(beta > 0.0)) throw DomainError("hypergeometric family needs beta > 0");
  if (!(gamma > 0.0)) throw DomainError("hypergeometric family needs gamma > 0");
  fam.c = param(p, "c", 1.0 + std::sqrt(0.5 * beta));
  if (std::abs(2.0 * (fam.c - 1.0) * (fam.c - 1.0) - beta) > 1e-12 * std::max(1.0, beta)) {
    throw DomainError("hypergeometric family needs beta = 2 (c-1)^2");
  }
  const double b4 = std::pow(beta, 0.25);
  auto x_of_z = [b4, gamma](const Jet1& z) {
    return sqrt(2.0 * z) * hyp2f1_t(0.5, 0.75, 1.5, z) * (1.0 / (2.0 * gamma * b4));
  };
  constexpr double z_lo = 0.02, z_hi = 0.6;
  fam.window = {abel_hypergeometric(z_lo, beta, gamma).x, abel_hypergeometric(z_hi, beta, gamma).x};
  fam.h = ScalarField1D(
      "hypergeometric(beta=" + fmt(beta) + ", gamma=" + fmt(gamma) + ")",
      [beta, gamma, b4, x_of_z](double x) {
        // x(z) is increasing on (0, 1); bracket and bisect, then revert the series
        double lo = 1e-14, hi = 0.95;
        if (!(abel_hypergeometric(lo, beta, gamma).x <= x && x <= abel_hypergeometric(hi, beta, gamma).x)) {
          throw WindowError("hypergeometric family: x outside the parametrised range");
        }
        for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
          const double mid = 0.5 * (lo + hi);
          (abel_hypergeometric(mid, beta, gamma).x < x ? lo : hi) = mid;
        }
        const double zs = 0.5 * (lo + hi);
        const Jet1 xz = x_of_z(Jet1::variable(0, zs));
        // revert about (zs, x(zs)); x(zs) differs from x only by the bisection residue
        const Jet1 X = Jet1::variable(0, xz.value());
        const double slope = xz.d(0);
        Jet1 z = zs + (X - xz.value()) * (1.0 / slope);
        for (int it = 0; it < kJetOrder + 1; ++it) z = z - (compose(xz, z) - X) * (1.0 / slope);
        return gamma / b4 * pow(1.0 - z, -0.25);
      },
      fam.window);
  fam.ode2 = std::make_pair(0.0, beta);
  return fam;
}

FamilyInstance make_tan(const ParamMap& p) {
  FamilyInstance fam;
  fam.c = param(p, "c", 2.0);
  const double l = param(p, "l", -1.0), b = param(p, "b", 0.0);
  const int branch = static_cast<int>(param(p, "branch", 1.0));
  const auto [a1, a2] = beta_zero_alphas(fam.c);
  const double alpha = branch == 2 ? a2 : a1;
  if (alpha == 0.0) throw DomainError("tan family needs alpha != 0 (c != 1)");
  if (!(2.0 * l * alpha > 0.0)) throw DomainError("tan family needs 2 l alpha > 0");
  const double k = 0.5 * std::sqrt(2.0 * l * alpha);
  const double amp = std::sqrt(2.0 * l * alpha) / alpha;
  constexpr double margin = 0.05;
  fam.window = {-b + (-0.5 * std::numbers::pi + margin) / k, -b + (0.5 * std::numbers::pi - margin) / k};
  fam.h = ScalarField1D("tan(c=" + fmt(fam.c) + ", l=" + fmt(l) + ", b=" + fmt(b) + ")",
                        [amp, k, b](double x) { return amp * tan(k * (var(x) + b)); }, fam.window)
              .with_period(std::numbers::pi / k);
  fam.ode2 = std::make_pair(alpha, 0.0);
  fam.params["alpha"] = alpha;
  return fam;
}

FamilyInstance make_tanh(const ParamMap& p) {
  FamilyInstance fam;
  fam.c = param(p, "c", -1.0);
  const double l = param(p, "l", -1.0), b = param(p, "b", 0.0);
  if (fam.c == 0.0) throw DomainError("tanh family needs c != 0");
  if (!(fam.c * l > 0.0)) throw DomainError("tanh family needs c l > 0");
  const double k = std::sqrt(fam.c * l);
  const double amp = k / fam.c;
  fam.window = Window::all();
  fam.h = ScalarField1D("tanh(c=" + fmt(fam.c) + ", l=" + fmt(l) + ", b=" + fmt(b) + ")",
                        [amp, k, b](double x) { return amp * tanh(k * (var(x) + b)); })
              .with_primitive([amp, k, b](double x) { return amp / k * std::log(std::cosh(k * (x + b))); });
  fam.ode2 = std::make_pair(-2.0 * fam.c, 0.0);
  return fam;
}

FamilyInstance make_linear(const ParamMap& p) {
  FamilyInstance fam;
  const double l = param(p, "l", 1.0), b = param(p, "b", 0.0);
  fam.c = param(p, "c", 1.0);
  fam.h = field_linear(l, b);
  fam.window = Window::all();
  fam.ode2 = std::make_pair(0.0, 0.0);
  if (fam.c == 1.0) fam.first_integral = -0.5 * l * l * l;
  return fam;
}

FamilyInstance make_rational(const ParamMap& p) {
  FamilyInstance fam;
  fam.c = param(p, "c", 1.0);
  const double b = param(p, "b", 0.0);
  double gamma = param(p, "gamma", 1.0);
  double alpha = 0.0;
  if (has(p, "alpha")) {
    alpha = require(p, "alpha");
    if (alpha == 0.0) throw DomainError("rational family needs alpha != 0");
    const int branch = static_cast<int>(param(p, "branch", 1.0));
    gamma = branch == 2 ? -1.0 / alpha : 2.0 / alpha;
  }
  if (gamma == 0.0) throw DomainError("rational family needs gamma != 0");
  if (fam.c == 1.0) {
    // gamma / (x - b) solves h'' = alpha h h' + alpha^2 h^3 for alpha = 2/gamma
    if (!has(p, "alpha")) alpha = 2.0 / gamma;
    fam.ode2 = std::make_pair(alpha, alpha * alpha);
    fam.first_integral = 0.0;
  } else {
    const double m = fam.c - 1.0;
    if (std::abs(gamma * gamma * m * m - 1.0) > 1e-12) {
      throw DomainError("rational family with c != 1 needs gamma = +-1/|c-1|");
    }
    fam.ode2 = std::make_pair(0.0, 2.0 * m * m);
  }
  const double side = param(p, "side", 1.0) < 0.0 ? -1.0 : 1.0;
  constexpr double margin = 0.01;
  fam.window = side > 0.0 ? Window{b + margin, std::numeric_limits<double>::infinity()}
                          : Window{-std::numeric_limits<double>::infinity(), b - margin};
  fam.h = ScalarField1D("rational(" + fmt(gamma) + "/(x - " + fmt(b) + "))",
                        [gamma, b](double x) { return gamma / (var(x) - b); }, fam.window)
              .with_primitive([gamma, b](double x) { return gamma * std::log(std::abs(x - b)); });
  fam.params["gamma"] = gamma;
  return fam;
}

FamilyInstance make_quadratic(const ParamMap& p) {
  FamilyInstance fam;
  const double b = param(p, "b", 0.0);
  fam.c = param(p, "c", 1.0);
  fam.window = Window::all();
  fam.h = ScalarField1D("quadratic((x - " + fmt(b) + ")^2)",
                        [b](double x) {
                          const Jet1 u = var(x) - b;
                          return u * u;
                        })
              .with_primitive([b](double x) { return (x - b) * (x - b) * (x - b) / 3.0; });
  if (fam.c == 1.0) fam.first_integral = 0.0;
  return fam;
}

FamilyInstance make_numeric(const ParamMap& p) {
  FamilyInstance fam;
  fam.c = require(p, "c");
  const double x0 = param(p, "x0", 0.0), span = param(p, "span", 2.0);
  const double c = fam.c;
  IvpSpec spec;
  spec.dimension = 4;
  spec.x0 = x0;
  spec.y0 = {require(p, "h0"), param(p, "h1", 0.0), param(p, "h2", 0.0), param(p, "h3", 0.0)};
  spec.rhs = [c](double, std::span<const double> y, std::span<double> dy) {
    dy[0] = y[1];
    dy[1] = y[2];
    dy[2] = y[3];
    dy[3] = ode4_fourth_derivative(y[0], y[1], y[2], y[3], c);
  };
  spec.guard = [](double, std::span<const double> y) { return std::abs(y[0]) <= 1e-6; };
  auto traj = std::make_shared<Trajectory>(integrate(spec, x0 + span));
  fam.window = {std::min(traj->x_begin(), traj->x_end()), std::max(traj->x_begin(), traj->x_end())};
  fam.h = ScalarField1D("numeric ode4(c=" + fmt(c) + ")",
                        [traj, c](double x) {
                          if (!traj->contains(x)) throw WindowError("numeric family: x outside trajectory");
                          const State s = traj->at(x);
                          return jet1_from_derivatives(
                              {s[0], s[1], s[2], s[3], ode4_fourth_derivative(s[0], s[1], s[2], s[3], c)});
                        },
                        fam.window);
  fam.params["x_end"] = traj->x_end();
  return fam;
}

}  // namespace

FamilyInstance family_catalog(FamilyTag tag, const ParamMap& params) {
  FamilyInstance fam;
  switch (tag) {
    case FamilyTag::kWeierstrass:
      fam = make_weierstrass(params);
      break;
    case FamilyTag::kJacobiReduction:
      fam = make_jacobi(params);
      break;
    case FamilyTag::kHypergeometricParametric:
      fam = make_hypergeometric(params);
      break;
    case FamilyTag::kTanFamily:
      fam = make_tan(params);
      break;
    case FamilyTag::kTanhHyperCR:
      fam = make_tanh(params);
      break;
    case FamilyTag::kLinear:
      fam = make_linear(params);
      break;
    case FamilyTag::kRationalPole:
      fam = make_rational(params);
      break;
    case FamilyTag::kQuadratic:
      fam = make_quadratic(params);
      break;
    case FamilyTag::kNumericODE:
      fam = make_numeric(params);
      break;
  }
  fam.tag = tag;
  for (const auto& [k, v] : params) fam.params.emplace(k, v);
  fam.params["c"] = fam.c;
  return fam;
}

bool periodicity_check(const ScalarField1D& h, double T) {
  if (!(T > 0.0)) throw DomainError("periodicity_check: T must be positive");
  constexpr int kSamples = 64;
  constexpr double kTol = 1e-8;
  const Window& w = h.window();
  double lo = 0.0, hi = T;
  if (w.bounded()) {
    lo = w.lo;
    hi = (w.hi - w.lo > T) ? w.hi - T : w.hi;
  } else if (std::isfinite(w.lo)) {
    lo = w.lo;
    hi = w.lo + T;
  } else if (std::isfinite(w.hi)) {
    lo = w.hi - 2.0 * T;
    hi = w.hi - T;
  }
  try {
    for (int i = 0; i < kSamples; ++i) {
      const double x = lo + (hi - lo) * i / (kSamples - 1);
      const Jet1 a = h.at(x), b = h.at(x + T);
      if (!(std::abs(b.value() - a.value()) < kTol)) return false;
      if (!(std::abs(b.d(0) - a.d(0)) < kTol)) return false;
    }
  } catch (const Error&) {
    return false;
  }
  return true;
}

}  // namespace ewh
