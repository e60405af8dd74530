#pragma once

// Near-horizon metrics g = 2 dnu (dr + r h(x) dx + r^2/2 F(x) dnu) + dx^2,
// their Weyl 1-form ansatz, and the reduction ODEs for h.

#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "ewh/curvature.hpp"
#include "ewh/jets.hpp"

namespace ewh {

struct Window {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double x) const { return x >= lo && x <= hi; }
  bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
  static Window all() { return {}; }
};

// A function of x carried as Taylor data through order 4.
class ScalarField1D {
 public:
  using Evaluator = std::function<Jet1(double)>;
  using Primitive = std::function<double(double)>;

  ScalarField1D() = default;
  ScalarField1D(std::string label, Evaluator eval, Window window = Window::all());

  // Taylor data at x; no window check (periodic extensions evaluate fine).
  Jet1 at(double x) const { return eval_(x); }
  // Taylor data at x, throwing WindowError outside the admissible window.
  Jet1 checked(double x) const;
  double value(double x) const { return at(x).value(); }

  template <int N>
  Jet<N> operator()(const Jet<N>& x) const {
    return compose(checked(x.value()), x);
  }

  const std::string& label() const { return label_; }
  const Window& window() const { return window_; }
  std::optional<double> period() const { return period_; }
  // Closed-form antiderivative (arbitrary base) when known.
  const Primitive& primitive() const { return primitive_; }
  // Set when the field is constant; enables closed-form Weierstrass arguments.
  std::optional<double> constant() const { return constant_; }

  ScalarField1D with_period(double T) const;
  ScalarField1D with_primitive(Primitive p) const;
  ScalarField1D with_constant(double k) const;
  ScalarField1D with_window(Window w) const;

  // h + eps * sin(x), the standard non-solution perturbation.
  ScalarField1D perturbed(double eps) const;

 private:
  std::string label_;
  Evaluator eval_;
  Window window_;
  std::optional<double> period_;
  Primitive primitive_;
  std::optional<double> constant_;
};

// Built-in fields: zero, one, sin, cos, exp, linear (l x + b), constant k.
ScalarField1D field_zero();
ScalarField1D field_constant(double k);
ScalarField1D field_sin();
ScalarField1D field_cos();
ScalarField1D field_exp();
ScalarField1D field_linear(double l, double b);
// e^{integral of h}, with the integral taken from base x0.
ScalarField1D field_exp_primitive(const ScalarField1D& h, double x0 = 0.0);

struct NearHorizonData {
  ScalarField1D h;
  ScalarField1D F;
  double c = 0.0;
};

MetricField nh_metric(const NearHorizonData& d);

// F'(x) - F(x) h(x); vanishes on a window iff the metric is conformally flat there.
double flatness_defect(const NearHorizonData& d, double x);

// X = c h dx + r ((2c+1) h' + c(2c+1) h^2 - 2F) dnu
OneFormField weyl_oneform_generic(const NearHorizonData& d);

inline constexpr double kHGuard = 1e-10;

// (h'' + 4 c h h' + 2 c^2 h^3) / (2h)
double F_from_h(const ScalarField1D& h, double c, double x);
Jet1 F_from_h_jet(const Jet1& h, double c);
ScalarField1D F_from_h_field(const ScalarField1D& h, double c);

// Reduction residuals on univariate Taylor data.
double ode4_residual(const Jet1& h, double c);
double ode2_residual(const Jet1& h, double alpha, double beta);
double reduction_consistency(double alpha, double c);  // beta = 2(c-1)^2 + 3 alpha (c-1) + alpha^2
std::pair<double, double> beta_zero_alphas(double c);  // {1 - c, 2 - 2c}
double F_ode_residual_chalf(const Jet1& F, const Jet1& h);
double ode3_first_integral(const Jet1& h);
double nlode_residual(const Jet1& f);

// Taylor data of h at x0 satisfying h'' = alpha h h' + beta h^3, given h and h'.
Jet1 ode2_consistent_jet(double h0, double h1, double alpha, double beta);

// Solved form of the fourth-order ODE: h'''' = 4 (rest) / h^2.
double ode4_fourth_derivative(double h, double h1, double h2, double h3, double c);

// ---------------------------------------------------------------------------
// Abel reduction y(h) = h^2 x'(h)

double abel_rhs(double y, double h, double alpha, double beta);

// h(y) from the closed form (real branch; see abel_h_t) and its y-derivative
// data. Templated so implicit differentiation can run in jets.
template <class T>
T abel_h_t(const T& y, double alpha, double beta, double gamma);
template <class T>
T abel_dxdy_t(const T& y, double alpha, double beta, double gamma);

struct AbelPoint {
  double h = 0.0;
  double x = 0.0;
};

// Closed-form h(y) and quadrature x(y) = x(base) + int_base^y dx/dy. With
// base = +inf the constant is fixed by x(inf) = 0. Throws PathError when the
// path from base to y crosses a root of beta y^2 + alpha y - 2 or leaves y > 0.
AbelPoint abel_parametric(double y, double alpha, double beta, double gamma,
                          double base = std::numeric_limits<double>::infinity());

// The alpha = 0 closed forms after y = (2 / (beta z))^(1/2).
AbelPoint abel_hypergeometric(double z, double beta, double gamma);

// h' and h'' along the parametric curve by implicit differentiation.
struct AbelSlopes {
  double h = 0.0, dh = 0.0, d2h = 0.0;
};
AbelSlopes abel_slopes(double y, double alpha, double beta, double gamma);

// ---------------------------------------------------------------------------
// Solution families

enum class FamilyTag {
  kWeierstrass,
  kJacobiReduction,
  kHypergeometricParametric,
  kTanFamily,
  kTanhHyperCR,
  kLinear,
  kRationalPole,
  kQuadratic,
  kNumericODE,
};

std::string to_string(FamilyTag tag);
FamilyTag family_tag_from_string(const std::string& name);

using ParamMap = std::map<std::string, double>;

struct FamilyInstance {
  FamilyTag tag{};
  ParamMap params;
  ScalarField1D h;
  double c = 0.0;
  Window window;
  std::optional<ScalarField1D> F;                   // set when F is not F_from_h (c = -1/2)
  std::optional<std::pair<double, double>> ode2;    // (alpha, beta) when h solves the 2nd-order ODE
  std::optional<double> first_integral;             // constant value of ode3_first_integral (c = 1)

  NearHorizonData data() const;
};

// Build a catalogued family. Missing parameters take the documented
// defaults; inconsistent ones throw DomainError.
FamilyInstance family_catalog(FamilyTag tag, const ParamMap& params);

// Weierstrass data: F = P(z(x) + a; 0, b) e^{H(x)}, H = int_x0^x h,
// z = int_x0^x e^{H/2}; c = -1/2.
NearHorizonData weierstrass_data(const ScalarField1D& h, double a, double b, double x0 = 0.0);
bool weierstrass_closed_form(const ScalarField1D& h);

// True iff max over 64 samples of |h(x+T) - h(x)| and of |h'(x+T) - h'(x)| is below 1e-8.
bool periodicity_check(const ScalarField1D& h, double T);

}  // namespace ewh
