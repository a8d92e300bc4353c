#include "webs/weight.hpp"

#include <cmath>

namespace webs {

Jet half_plane_primitive(const Point& point, const Vec& inward_normal, const Point& x) {
  Jet j;
  j.value = inward_normal[0] * (x[0] - point[0]) + inward_normal[1] * (x[1] - point[1]);
  j.grad = inward_normal;
  return j;
}

Jet disk_primitive(const Point& center, double radius, bool inside, const Point& x) {
  const double s = inside ? 1.0 : -1.0;
  const double dx = x[0] - center[0], dy = x[1] - center[1];
  Jet j;
  j.value = s * (radius * radius - dx * dx - dy * dy) / (2.0 * radius);
  j.grad = {-s * dx / radius, -s * dy / radius};
  j.hess = {-s / radius, 0.0, -s / radius};
  return j;
}

Jet r_conjunction(const Jet& a, const Jet& b) {
  const double rho = std::hypot(a.value, b.value);
  Jet r;
  if (rho == 0.0) {
    r.value = 0.0;
    r.grad = {a.grad[0] + b.grad[0], a.grad[1] + b.grad[1]};
    r.hess = {a.hess.xx + b.hess.xx, a.hess.xy + b.hess.xy, a.hess.yy + b.hess.yy};
    return r;
  }
  r.value = a.value + b.value - rho;
  // grad rho = (a grad a + b grad b) / rho
  const Vec q{a.value * a.grad[0] + b.value * b.grad[0], a.value * a.grad[1] + b.value * b.grad[1]};
  r.grad = {a.grad[0] + b.grad[0] - q[0] / rho, a.grad[1] + b.grad[1] - q[1] / rho};
  // hess rho = (ga ga^T + a Ha + gb gb^T + b Hb) / rho - q q^T / rho^3
  auto hrho = [&](int s, int t, double ha, double hb) {
    const double m = a.grad[s] * a.grad[t] + a.value * ha + b.grad[s] * b.grad[t] + b.value * hb;
    return m / rho - q[s] * q[t] / (rho * rho * rho);
  };
  r.hess.xx = a.hess.xx + b.hess.xx - hrho(0, 0, a.hess.xx, b.hess.xx);
  r.hess.xy = a.hess.xy + b.hess.xy - hrho(0, 1, a.hess.xy, b.hess.xy);
  r.hess.yy = a.hess.yy + b.hess.yy - hrho(1, 1, a.hess.yy, b.hess.yy);
  return r;
}

namespace {

Jet primitive(const BoundaryCurve& c, const Point& x) {
  switch (c.kind()) {
    case BoundaryCurve::Kind::Segment: {
      const Vec n = c.outward_normal(0.5);
      return half_plane_primitive(c.a(), {-n[0], -n[1]}, x);
    }
    case BoundaryCurve::Kind::Arc: {
      // Counter-clockwise arcs bound the inside of their circle.
      const bool inside = c.theta1() > c.theta0();
      return disk_primitive(c.center(), c.radius(), inside, x);
    }
    case BoundaryCurve::Kind::EndPoint: {
      const Vec n = c.outward_normal(0.0);
      return half_plane_primitive(c.a(), {-n[0], 0.0}, x);
    }
    case BoundaryCurve::Kind::Implicit: break;
  }
  throw Error(ErrorKind::UnsupportedBoundary, "no weight primitive for an implicit boundary piece");
}

}  // namespace

WeightFunction weight_rfunction(const std::vector<BoundaryCurve>& dirichlet) {
  if (dirichlet.empty()) return WeightFunction();
  for (const auto& c : dirichlet) {
    if (c.kind() == BoundaryCurve::Kind::Implicit)
      throw Error(ErrorKind::UnsupportedBoundary, "no weight primitive for an implicit boundary piece");
  }
  return WeightFunction([pieces = dirichlet](const Point& x) {
    Jet w = primitive(pieces.front(), x);
    for (std::size_t p = 1; p < pieces.size(); ++p) w = r_conjunction(w, primitive(pieces[p], x));
    return w;
  });
}

WeightFunction annulus_weight() {
  return WeightFunction([](const Point& x) {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    const double a = r2 - 1.0, b = 4.0 - r2;
    Jet j;
    j.value = a * b;
    // d/dx_mu (a b) = 2 x_mu (b - a)
    const double c = b - a;
    j.grad = {2.0 * x[0] * c, 2.0 * x[1] * c};
    // d2/dx_s dx_t = 2 delta_st (b - a) - 8 x_s x_t
    j.hess = {2.0 * c - 8.0 * x[0] * x[0], -8.0 * x[0] * x[1], 2.0 * c - 8.0 * x[1] * x[1]};
    return j;
  });
}

WeightFunction interval_weight() {
  return WeightFunction([](const Point& x) {
    Jet j;
    j.value = x[0] * (1.0 - x[0]);
    j.grad = {1.0 - 2.0 * x[0], 0.0};
    j.hess = {-2.0, 0.0, 0.0};
    return j;
  });
}

}  // namespace webs
