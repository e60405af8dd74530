#include "ewh/nearhorizon.hpp"

#include <cmath>
#include <string>

#include "ewh/errors.hpp"
#include "ewh/odesolve.hpp"
#include "ewh/specfun.hpp"

namespace ewh {

// ---------------------------------------------------------------------------
// ScalarField1D

ScalarField1D::ScalarField1D(std::string label, Evaluator eval, Window window)
    : label_(std::move(label)), eval_(std::move(eval)), window_(window) {}

Jet1 ScalarField1D::checked(double x) const {
  if (!window_.contains(x)) {
    throw WindowError(label_ + ": x = " + std::to_string(x) + " outside admissible window [" +
                      std::to_string(window_.lo) + ", " + std::to_string(window_.hi) + "]");
  }
  return eval_(x);
}

ScalarField1D ScalarField1D::with_period(double T) const {
  ScalarField1D f = *this;
  f.period_ = T;
  return f;
}

ScalarField1D ScalarField1D::with_primitive(Primitive p) const {
  ScalarField1D f = *this;
  f.primitive_ = std::move(p);
  return f;
}

ScalarField1D ScalarField1D::with_constant(double k) const {
  ScalarField1D f = *this;
  f.constant_ = k;
  return f;
}

ScalarField1D ScalarField1D::with_window(Window w) const {
  ScalarField1D f = *this;
  f.window_ = w;
  return f;
}

ScalarField1D ScalarField1D::perturbed(double eps) const {
  auto eval = eval_;
  ScalarField1D f(label_ + " + " + std::to_string(eps) + " sin(x)",
                  [eval, eps](double x) { return eval(x) + eps * sin(Jet1::variable(0, x)); },
                  window_);
  if (primitive_) {
    auto p = primitive_;
    f.primitive_ = [p, eps](double x) { return p(x) - eps * std::cos(x); };
  }
  return f;
}

// ---------------------------------------------------------------------------
// Metric, 1-form, F

MetricField nh_metric(const NearHorizonData& d) {
  const ScalarField1D h = d.h, F = d.F;
  return MetricField("near-horizon[h=" + h.label() + ", F=" + F.label() + "]",
                     [h, F](const JetPoint& q) {
                       JetMatrix g;
                       const Jet3 hx = h(q.x);
                       const Jet3 Fx = F(q.x);
                       g[0][0] = q.r * q.r * Fx;
                       g[0][1] = 1.0;
                       g[0][2] = q.r * hx;
                       g[1][1] = 0.0;
                       g[1][2] = 0.0;
                       g[2][2] = 1.0;
                       return g;
                     });
}

double flatness_defect(const NearHorizonData& d, double x) {
  const Jet1 F = d.F.at(x);
  return F.d(0) - F.value() * d.h.value(x);
}

OneFormField weyl_oneform_generic(const NearHorizonData& d) {
  const ScalarField1D h = d.h, F = d.F;
  const double c = d.c;
  return OneFormField("X_generic[c=" + std::to_string(c) + "]", [h, F, c](const JetPoint& q) {
    const Jet1 h1 = h.checked(q.x.value());
    const Jet3 hx = compose(h1, q.x);
    const Jet3 dhx = compose(differentiate(h1), q.x);
    const Jet3 Fx = F(q.x);
    JetVector X;
    X[kNu] = q.r * ((2.0 * c + 1.0) * dhx + (c * (2.0 * c + 1.0)) * hx * hx - 2.0 * Fx);
    X[kR] = 0.0;
    X[kX] = c * hx;
    return X;
  });
}

Jet1 F_from_h_jet(const Jet1& h, double c) {
  if (!(std::abs(h.value()) > kHGuard)) {
    throw SingularPointError("F_from_h: h vanishes (|h| <= 1e-10)", h.value());
  }
  const Jet1 h1 = differentiate(h);
  const Jet1 h2 = differentiate(h1);
  return (h2 + (4.0 * c) * h * h1 + (2.0 * c * c) * h * h * h) / (2.0 * h);
}

double F_from_h(const ScalarField1D& h, double c, double x) {
  return F_from_h_jet(h.at(x), c).value();
}

ScalarField1D F_from_h_field(const ScalarField1D& h, double c) {
  return ScalarField1D("F_from_h[" + h.label() + ", c=" + std::to_string(c) + "]",
                       [h, c](double x) { return F_from_h_jet(h.at(x), c); }, h.window());
}

// ---------------------------------------------------------------------------
// Reduction ODEs

double ode4_residual(const Jet1& hj, double c) {
  const auto d = derivatives_of(hj);
  const double h = d[0], h1 = d[1], h2 = d[2], h3 = d[3], h4 = d[4];
  const double m = c - 1.0;
  return h * h * h * h1 * h1 * m * m - 0.5 * m * m * h * h * h * h * h2 +
         2.25 * m * h * h * h1 * h2 - 0.75 * m * h * h * h * h3 - 0.5 * h1 * h1 * h2 +
         0.5 * h * h1 * h3 + h * h2 * h2 - 0.25 * h * h * h4;
}

double ode4_fourth_derivative(double h, double h1, double h2, double h3, double c) {
  const double m = c - 1.0;
  const double rest = h * h * h * h1 * h1 * m * m - 0.5 * m * m * h * h * h * h * h2 +
                      2.25 * m * h * h * h1 * h2 - 0.75 * m * h * h * h * h3 -
                      0.5 * h1 * h1 * h2 + 0.5 * h * h1 * h3 + h * h2 * h2;
  return 4.0 * rest / (h * h);
}

double ode2_residual(const Jet1& hj, double alpha, double beta) {
  const auto d = derivatives_of(hj);
  return d[2] - alpha * d[0] * d[1] - beta * d[0] * d[0] * d[0];
}

double reduction_consistency(double alpha, double c) {
  const double m = c - 1.0;
  return 2.0 * m * m + 3.0 * alpha * m + alpha * alpha;
}

std::pair<double, double> beta_zero_alphas(double c) { return {1.0 - c, 2.0 - 2.0 * c}; }

double F_ode_residual_chalf(const Jet1& Fj, const Jet1& hj) {
  const auto F = derivatives_of(Fj);
  const auto h = derivatives_of(hj);
  return -3.0 * F[0] * h[0] * h[0] + 5.0 * h[0] * F[1] + 2.0 * F[0] * h[1] + 12.0 * F[0] * F[0] -
         2.0 * F[2];
}

double ode3_first_integral(const Jet1& hj) {
  const auto d = derivatives_of(hj);
  return -0.25 * d[0] * d[0] * d[3] + d[0] * d[1] * d[2] - 0.5 * d[1] * d[1] * d[1];
}

double nlode_residual(const Jet1& fj) {
  const auto d = derivatives_of(fj);
  return d[3] - d[1] * d[2] - d[1] * d[1] * d[1];
}

Jet1 ode2_consistent_jet(double h0, double h1, double alpha, double beta) {
  const double h2 = alpha * h0 * h1 + beta * h0 * h0 * h0;
  const double h3 = alpha * (h1 * h1 + h0 * h2) + 3.0 * beta * h0 * h0 * h1;
  const double h4 = alpha * (3.0 * h1 * h2 + h0 * h3) + beta * (6.0 * h0 * h1 * h1 + 3.0 * h0 * h0 * h2);
  return jet1_from_derivatives({h0, h1, h2, h3, h4});
}

// ---------------------------------------------------------------------------
// Abel reduction

double abel_rhs(double y, double h, double alpha, double beta) {
  if (h == 0.0) throw SingularPointError("abel_rhs: h = 0", h);
  return (-beta * y * y * y - alpha * y * y + 2.0 * y) / h;
}

namespace {

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

template <class T>
T log_abs(const T& v) {
  using std::log;
  return value_of(v) < 0.0 ? log(-1.0 * v) : log(v);
}

// Exponent (alpha / (2 sqrt(D))) artanh((2 beta y + alpha) / sqrt(D)), D = alpha^2 + 8 beta.
// For |w| > 1 the real part of artanh is used (the imaginary constant is a
// phase absorbed into gamma); for D < 0, artanh(i u) = i atan(u) keeps the
// exponent real.
template <class T>
T abel_exponent(const T& y, double alpha, double beta) {
  if (beta == 0.0) throw DomainError("abel: closed form degenerates for beta = 0");
  const double D = alpha * alpha + 8.0 * beta;
  if (D == 0.0) throw DomainError("abel: closed form degenerates for alpha^2 + 8 beta = 0");
  if (alpha == 0.0) return T(0.0);
  if (D > 0.0) {
    const double s = std::sqrt(D);
    const T w = (2.0 * beta * y + alpha) * (1.0 / s);
    return (alpha / (2.0 * s)) * 0.5 * (log_abs(1.0 + w) - log_abs(1.0 - w));
  }
  using std::atan;
  const double s = std::sqrt(-D);
  return (-alpha / (2.0 * s)) * atan((2.0 * beta * y + alpha) * (1.0 / s));
}

template <class T>
T abel_quadratic(const T& y, double alpha, double beta) {
  return beta * y * y + alpha * y - 2.0;
}

}  // namespace

template <class T>
T abel_h_t(const T& y, double alpha, double beta, double gamma) {
  using std::exp;
  using std::pow;
  using std::sqrt;
  if (!(value_of(y) > 0.0)) throw PathError("abel: y must be positive");
  const T q = abel_quadratic(y, alpha, beta);
  const double sq = sign_of(value_of(q));
  return gamma * sqrt(y) * exp(abel_exponent(y, alpha, beta)) / pow(sq * q, 0.25);
}

template <class T>
T abel_dxdy_t(const T& y, double alpha, double beta, double gamma) {
  using std::exp;
  using std::pow;
  using std::sqrt;
  if (!(value_of(y) > 0.0)) throw PathError("abel: y must be positive");
  const T q = abel_quadratic(y, alpha, beta);
  const double sq = sign_of(value_of(q));
  // sign(q) keeps dx/dy = (y / h^2) dh/dy when the quartic root is taken of |q|
  return (-sq / gamma) * exp(-1.0 * abel_exponent(y, alpha, beta)) /
         (sqrt(y) * pow(sq * q, 0.75));
}

template double abel_h_t<double>(const double&, double, double, double);
template Jet1 abel_h_t<Jet1>(const Jet1&, double, double, double);
template double abel_dxdy_t<double>(const double&, double, double, double);
template Jet1 abel_dxdy_t<Jet1>(const Jet1&, double, double, double);

namespace {

void check_abel_path(double y, double base, double alpha, double beta) {
  if (!(y > 0.0) || !(base > 0.0)) throw PathError("abel: path leaves y > 0");
  const double D = alpha * alpha + 8.0 * beta;
  const double lo = std::min(y, base), hi = std::max(y, base);
  if (D >= 0.0 && beta != 0.0) {
    const double s = std::sqrt(D);
    for (double root : {(-alpha + s) / (2.0 * beta), (-alpha - s) / (2.0 * beta)}) {
      if (root >= lo && root <= hi) {
        throw PathError("abel: integration path crosses the branch point y = " +
                        std::to_string(root));
      }
    }
  }
}

}  // namespace

AbelPoint abel_parametric(double y, double alpha, double beta, double gamma, double base) {
  if (gamma == 0.0) throw DomainError("abel: gamma must be non-zero");
  check_abel_path(y, std::isinf(base) ? std::max(y, 1.0) * 1e300 : base, alpha, beta);
  AbelPoint out;
  out.h = abel_h_t(y, alpha, beta, gamma);
  if (std::isinf(base)) {
    if (!(beta > 0.0 || beta < 0.0)) throw DomainError("abel: x(inf) needs beta != 0");
    // x(y) = -int_y^inf dx/dy; substitute y' = 1/t
    const auto f = [&](double t) {
      const double yy = 1.0 / t;
      return abel_dxdy_t(yy, alpha, beta, gamma) / (t * t);
    };
    out.x = -quad(f, 0.0, 1.0 / y).value;
  } else {
    const auto f = [&](double yy) { return abel_dxdy_t(yy, alpha, beta, gamma); };
    out.x = quad(f, base, y).value;
  }
  return out;
}

AbelPoint abel_hypergeometric(double z, double beta, double gamma) {
  if (!(beta > 0.0)) throw DomainError("abel_hypergeometric: beta must be positive");
  if (!(z > 0.0 && z < 1.0)) throw DomainError("abel_hypergeometric: z outside (0, 1)");
  const double b4 = std::pow(beta, 0.25);
  AbelPoint out;
  out.h = gamma / (b4 * std::pow(1.0 - z, 0.25));
  out.x = std::sqrt(2.0 * z) / (2.0 * gamma * b4) * hyp2f1(0.5, 0.75, 1.5, z);
  return out;
}

AbelSlopes abel_slopes(double y, double alpha, double beta, double gamma) {
  const Jet1 yj = Jet1::variable(0, y);
  const Jet1 h = abel_h_t(yj, alpha, beta, gamma);
  const Jet1 xy = abel_dxdy_t(yj, alpha, beta, gamma);
  const Jet1 hx = differentiate(h) / xy;
  const Jet1 hxx = differentiate(hx) / xy;
  return {h.value(), hx.value(), hxx.value()};
}

}  // namespace ewh
