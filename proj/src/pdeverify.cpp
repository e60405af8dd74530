#include "ewh/pdeverify.hpp"

#include <cmath>
#include <cstdio>

#include "ewh/errors.hpp"
#include "ewh/specfun.hpp"

namespace ewh {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

Jet3 second(const Jet3& f, int a, int b) { return f.derivative(a).derivative(b); }

}  // namespace

PotentialField PotentialField::scaled(double k) const {
  Fn fn = fn_;
  return PotentialField(fmt(k) + " * " + label_, [fn, k](const JetPoint& q) { return k * fn(q); },
                        params_);
}

double dkp_residual(const PotentialField& u, const Point& p) {
  const Jet3 U = u.at(p);
  const double ur = U.partial({0, 1, 0});
  const double urr = U.partial({0, 2, 0});
  const double unur = U.partial({1, 1, 0});
  const double uxx = U.partial({0, 0, 2});
  return 2.0 * unur - 2.0 * (ur * ur + U.value() * urr) - uxx;
}

double hypercr_residual(const PotentialField& H, const Point& p) {
  const Jet3 F = H.at(p);
  return F.partial({0, 0, 1}) * F.partial({0, 2, 0}) - F.partial({0, 1, 0}) * F.partial({0, 1, 1}) -
         F.partial({0, 0, 2}) + F.partial({1, 1, 0});
}

PotentialField dkp_weierstrass(double a, double b) {
  return PotentialField("-(r^2/2) wp(x + " + fmt(a) + "; 0, " + fmt(b) + ")",
                        [a, b](const JetPoint& q) { return -0.5 * q.r * q.r * wp_jet(q.x + a, b); },
                        {{"a", a}, {"b", b}});
}

PotentialField hypercr_tanh_family(const HyperCRParams& p) {
  if (p.b == 0.0) throw DomainError("hyperCR tanh family needs b != 0");
  return PotentialField("hypercr tanh^3", [p](const JetPoint& q) {
    const Jet3 T = tanh((p.a * p.a / p.b) * q.r + p.b * q.nu + p.a * q.x + p.e);
    return p.j * T * T * T + p.k * T + p.l;
  }, {{"a", p.a}, {"b", p.b}, {"e", p.e}, {"j", p.j}, {"k", p.k}, {"l", p.l}});
}

PotentialField hypercr_from_h(const ScalarField1D& h, double c) {
  return PotentialField(fmt(c) + " * " + h.label() + " * r^2",
                        [h, c](const JetPoint& q) { return c * h(q.x) * q.r * q.r; }, {{"c", c}});
}

std::pair<MetricField, OneFormField> hypercr_structures(const PotentialField& H) {
  MetricField g("hyperCR metric(" + H.label() + ")", [H](const JetPoint& q) {
    const Jet3 F = H.at(q);
    const Jet3 Hr = F.derivative(kR), Hx = F.derivative(kX);
    JetMatrix m{};
    m[kNu][kNu] = 4.0 * Hx + Hr * Hr;
    m[kNu][kR] = Jet3(-2.0);
    m[kNu][kX] = Hr;
    m[kX][kX] = Jet3(1.0);
    return m;
  });
  OneFormField X("hyperCR 1-form(" + H.label() + ")", [H](const JetPoint& q) {
    const Jet3 F = H.at(q);
    const Jet3 Hr = F.derivative(kR);
    const Jet3 Hrr = second(F, kR, kR), Hxr = second(F, kX, kR);
    JetVector v{};
    v[kX] = 0.5 * Hrr;
    v[kNu] = 0.5 * (Hr * Hrr + 2.0 * Hxr);
    return v;
  });
  return {g, X};
}

ScalarField1D prop4_h(double c, double l, double b) {
  if (c == 0.0) throw DomainError("prop4 structures need c != 0");
  if (!(c * l > 0.0)) throw WindowError("prop4 structures need c l > 0 for a real closed form");
  return family_catalog(FamilyTag::kTanhHyperCR, {{"c", c}, {"l", l}, {"b", b}}).h;
}

std::pair<MetricField, OneFormField> prop4_structures(double c, double l, double b) {
  const ScalarField1D h = prop4_h(c, l, b);
  const std::string tag = "(c=" + fmt(c) + ", l=" + fmt(l) + ", b=" + fmt(b) + ")";
  MetricField g("prop4 metric" + tag, [h, c](const JetPoint& q) {
    const Jet3 hx = h(q.x);
    const Jet3 dh = hx.derivative(kX);
    JetMatrix m{};
    m[kNu][kNu] = q.r * q.r * (c * dh + c * c * hx * hx);
    m[kNu][kR] = Jet3(1.0);
    m[kNu][kX] = -c * hx * q.r;
    m[kX][kX] = Jet3(1.0);
    return m;
  });
  OneFormField X("prop4 1-form" + tag, [h, c](const JetPoint& q) {
    const Jet3 hx = h(q.x);
    JetVector v{};
    v[kX] = c * hx;
    v[kNu] = -c * q.r * (c * hx * hx + hx.derivative(kX));
    return v;
  });
  return {g, X};
}

}  // namespace ewh
