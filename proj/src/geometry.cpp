#include "webs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace webs {

BoundaryCurve BoundaryCurve::segment(Point a, Point b) {
  BoundaryCurve c;
  c.kind_ = Kind::Segment;
  c.a_ = a;
  c.b_ = b;
  return c;
}

BoundaryCurve BoundaryCurve::arc(Point center, double radius, double theta0, double theta1) {
  if (!(radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "arc radius must be positive");
  BoundaryCurve c;
  c.kind_ = Kind::Arc;
  c.a_ = center;
  c.radius_ = radius;
  c.theta0_ = theta0;
  c.theta1_ = theta1;
  return c;
}

BoundaryCurve BoundaryCurve::end_point(double x, double outward) {
  BoundaryCurve c;
  c.kind_ = Kind::EndPoint;
  c.a_ = {x, 0.0};
  c.b_ = {outward >= 0.0 ? 1.0 : -1.0, 0.0};
  return c;
}

BoundaryCurve BoundaryCurve::implicit(std::function<double(const Point&)> zero_set) {
  BoundaryCurve c;
  c.kind_ = Kind::Implicit;
  c.zero_set_ = std::move(zero_set);
  return c;
}

Point BoundaryCurve::point(double t) const {
  switch (kind_) {
    case Kind::Segment: return {a_[0] + t * (b_[0] - a_[0]), a_[1] + t * (b_[1] - a_[1])};
    case Kind::Arc: {
      const double th = theta0_ + t * (theta1_ - theta0_);
      return {a_[0] + radius_ * std::cos(th), a_[1] + radius_ * std::sin(th)};
    }
    case Kind::EndPoint: return a_;
    case Kind::Implicit: break;
  }
  throw Error(ErrorKind::UnparameterizedBoundary, "implicit boundary piece has no parameterization");
}

Vec BoundaryCurve::derivative(double t) const {
  switch (kind_) {
    case Kind::Segment: return {b_[0] - a_[0], b_[1] - a_[1]};
    case Kind::Arc: {
      const double th = theta0_ + t * (theta1_ - theta0_);
      const double s = radius_ * (theta1_ - theta0_);
      return {-s * std::sin(th), s * std::cos(th)};
    }
    case Kind::EndPoint: return {0.0, 0.0};
    case Kind::Implicit: break;
  }
  throw Error(ErrorKind::UnparameterizedBoundary, "implicit boundary piece has no parameterization");
}

Vec BoundaryCurve::outward_normal(double t) const {
  if (kind_ == Kind::EndPoint) return b_;
  const Vec d = derivative(t);
  const double len = std::hypot(d[0], d[1]);
  return {d[1] / len, -d[0] / len};
}

double BoundaryCurve::length() const {
  switch (kind_) {
    case Kind::Segment: return std::hypot(b_[0] - a_[0], b_[1] - a_[1]);
    case Kind::Arc: return radius_ * std::abs(theta1_ - theta0_);
    case Kind::EndPoint: return 1.0;
    case Kind::Implicit: break;
  }
  throw Error(ErrorKind::UnparameterizedBoundary, "implicit boundary piece has no parameterization");
}

std::vector<double> BoundaryCurve::grid_crossings(const GridSpec& grid) const {
  std::vector<double> ts;
  const double h = grid.h();
  auto keep = [&ts](double t) {
    if (t > 1e-14 && t < 1.0 - 1e-14) ts.push_back(t);
  };
  switch (kind_) {
    case Kind::Segment:
      for (int mu = 0; mu < 2; ++mu) {
        const double d = b_[mu] - a_[mu];
        if (std::abs(d) < 1e-300) continue;
        const double lo = std::min(a_[mu], b_[mu]);
        const double hi = std::max(a_[mu], b_[mu]);
        for (long k = static_cast<long>(std::ceil(lo / h)); k * h <= hi; ++k) keep((k * h - a_[mu]) / d);
      }
      break;
    case Kind::Arc: {
      const double tlo = std::min(theta0_, theta1_);
      const double thi = std::max(theta0_, theta1_);
      for (int mu = 0; mu < 2; ++mu) {
        const double lo = a_[mu] - radius_;
        const double hi = a_[mu] + radius_;
        for (long k = static_cast<long>(std::ceil(lo / h)); k * h <= hi; ++k) {
          const double c = std::clamp((k * h - a_[mu]) / radius_, -1.0, 1.0);
          // mu == 0: cos(theta) = c; mu == 1: sin(theta) = c
          const double base = mu == 0 ? std::acos(c) : std::asin(c);
          const double other = mu == 0 ? -base : std::numbers::pi - base;
          for (double root : {base, other}) {
            const double two_pi = 2.0 * std::numbers::pi;
            double th = root + two_pi * std::floor((tlo - root) / two_pi);
            for (; th <= thi + 1e-15; th += two_pi) {
              if (th >= tlo - 1e-15) keep((th - theta0_) / (theta1_ - theta0_));
            }
          }
        }
      }
      break;
    }
    case Kind::EndPoint: break;
    case Kind::Implicit:
      throw Error(ErrorKind::UnparameterizedBoundary, "implicit boundary piece has no parameterization");
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end(), [](double x, double y) { return std::abs(x - y) < 1e-13; }),
           ts.end());
  return ts;
}

double BoundaryCurve::distance(const Point& x) const {
  switch (kind_) {
    case Kind::Segment: {
      const Vec d{b_[0] - a_[0], b_[1] - a_[1]};
      const double dd = dot(d, d);
      const double t = dd > 0.0 ? std::clamp(((x[0] - a_[0]) * d[0] + (x[1] - a_[1]) * d[1]) / dd, 0.0, 1.0) : 0.0;
      const Point p = point(t);
      return std::hypot(x[0] - p[0], x[1] - p[1]);
    }
    case Kind::Arc: {
      const double rx = x[0] - a_[0], ry = x[1] - a_[1];
      double th = std::atan2(ry, rx);
      const double tlo = std::min(theta0_, theta1_);
      const double thi = std::max(theta0_, theta1_);
      const double two_pi = 2.0 * std::numbers::pi;
      th += two_pi * std::floor((tlo - th) / two_pi);
      if (th < tlo) th += two_pi;
      if (th <= thi) return std::abs(std::hypot(rx, ry) - radius_);
      const Point p0 = point(0.0), p1 = point(1.0);
      return std::min(std::hypot(x[0] - p0[0], x[1] - p0[1]), std::hypot(x[0] - p1[0], x[1] - p1[1]));
    }
    case Kind::EndPoint: return std::abs(x[0] - a_[0]);
    case Kind::Implicit: return std::abs(zero_set_(x));
  }
  return 0.0;
}

WeightFunction::WeightFunction()
    : fn_([](const Point&) { return Jet{1.0, {0.0, 0.0}, {}}; }), dirichlet_order_(1) {}

WeightFunction::WeightFunction(Fn fn, int dirichlet_order) : fn_(std::move(fn)), dirichlet_order_(dirichlet_order) {
  if (dirichlet_order < 1) throw Error(ErrorKind::InvalidArgument, "dirichlet order must be positive");
}

const std::vector<BoundaryCurve>& DomainModel::part(BoundaryPart p) const {
  switch (p) {
    case BoundaryPart::Dirichlet: return dirichlet;
    case BoundaryPart::Neumann: return neumann;
    case BoundaryPart::Robin: return robin;
  }
  return dirichlet;
}

std::optional<BoundaryPart> DomainModel::boundary_part(const Point& x, double tol) const {
  for (BoundaryPart p : {BoundaryPart::Dirichlet, BoundaryPart::Neumann, BoundaryPart::Robin}) {
    for (const auto& c : part(p)) {
      if (c.distance(x) <= tol) return p;
    }
  }
  return std::nullopt;
}

}  // namespace webs
