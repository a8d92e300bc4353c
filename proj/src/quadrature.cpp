#include "webs/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace webs {

double QuadratureRule::sum_weights() const {
  double s = 0.0;
  for (const auto& p : points) s += p.weight;
  return s;
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int count) {
  if (count < 1) throw Error(ErrorKind::InvalidArgument, "Gauss rule needs at least one point");
  std::vector<double> x(static_cast<std::size_t>(count)), w(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= count; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (count == 1) p0 = 1.0, p1 = z;
      dp = count * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // recompute derivative at converged node
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= count; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = count * (z * p1 - p0) / (z * z - 1.0);
    x[static_cast<std::size_t>(i)] = -z;
    w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

QuadratureRule gauss_box(const Box& box, int dim, int points_per_axis) {
  const auto [xi, wi] = gauss_legendre(points_per_axis);
  QuadratureRule rule;
  const double hx = 0.5 * (box.hi[0] - box.lo[0]);
  const double cx = 0.5 * (box.hi[0] + box.lo[0]);
  if (dim == 1) {
    for (std::size_t a = 0; a < xi.size(); ++a) rule.points.push_back({{cx + hx * xi[a], 0.0}, hx * wi[a]});
    return rule;
  }
  const double hy = 0.5 * (box.hi[1] - box.lo[1]);
  const double cy = 0.5 * (box.hi[1] + box.lo[1]);
  for (std::size_t a = 0; a < xi.size(); ++a)
    for (std::size_t b = 0; b < xi.size(); ++b)
      rule.points.push_back({{cx + hx * xi[a], cy + hy * xi[b]}, hx * hy * wi[a] * wi[b]});
  return rule;
}

namespace {

/// Point where the level set changes sign on the segment a-b (bisection).
Point edge_root(const DomainModel& domain, Point a, Point b) {
  const bool a_in = domain.inside(a);
  for (int it = 0; it < 60; ++it) {
    const Point m{0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])};
    if (domain.inside(m) == a_in) a = m;
    else b = m;
  }
  return {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])};
}

/// Collapsed tensor Gauss rule on a triangle.
void triangle_rule(const Point& p0, const Point& p1, const Point& p2, int q, QuadratureRule& rule) {
  const double area2 = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
  if (area2 == 0.0) return;
  const auto [xi, wi] = gauss_legendre(q);
  for (std::size_t a = 0; a < xi.size(); ++a) {
    const double u = 0.5 * (xi[a] + 1.0);
    for (std::size_t b = 0; b < xi.size(); ++b) {
      const double v = 0.5 * (xi[b] + 1.0) * (1.0 - u);
      const double w = 0.25 * wi[a] * wi[b] * (1.0 - u) * std::abs(area2);
      rule.points.push_back({{p0[0] + u * (p1[0] - p0[0]) + v * (p2[0] - p0[0]),
                              p0[1] + u * (p1[1] - p0[1]) + v * (p2[1] - p0[1])},
                             w});
    }
  }
}

void clipped_rule(const Box& box, const DomainModel& domain, int ppa, QuadratureRule& rule) {
  if (domain.dim == 1) {
    const Point a{box.lo[0], 0.0}, b{box.hi[0], 0.0};
    const bool ia = domain.inside(a), ib = domain.inside(b);
    if (ia == ib) {
      if (ia) {
        const QuadratureRule g = gauss_box(box, 1, ppa);
        rule.points.insert(rule.points.end(), g.points.begin(), g.points.end());
      }
      return;
    }
    const Point r = edge_root(domain, a, b);
    Box part = box;
    if (ia) part.hi[0] = r[0];
    else part.lo[0] = r[0];
    const QuadratureRule g = gauss_box(part, 1, ppa);
    rule.points.insert(rule.points.end(), g.points.begin(), g.points.end());
    return;
  }
  const std::array<Point, 4> corner{Point{box.lo[0], box.lo[1]}, Point{box.hi[0], box.lo[1]},
                                    Point{box.hi[0], box.hi[1]}, Point{box.lo[0], box.hi[1]}};
  std::vector<Point> poly;
  for (std::size_t c = 0; c < 4; ++c) {
    const Point& a = corner[c];
    const Point& b = corner[(c + 1) % 4];
    const bool ia = domain.inside(a);
    if (ia) poly.push_back(a);
    if (ia != domain.inside(b)) poly.push_back(edge_root(domain, a, b));
  }
  if (poly.size() < 3) return;
  Point g{0.0, 0.0};
  for (const auto& p : poly) g = {g[0] + p[0], g[1] + p[1]};
  g = {g[0] / static_cast<double>(poly.size()), g[1] / static_cast<double>(poly.size())};
  for (std::size_t k = 0; k < poly.size(); ++k) triangle_rule(g, poly[k], poly[(k + 1) % poly.size()], ppa, rule);
}

/// Inside interval of the segment a-b, assuming at most two sign changes.
bool inside_interval(const DomainModel& domain, const Point& a, const Point& b, Point& lo, Point& hi) {
  const bool ia = domain.inside(a), ib = domain.inside(b);
  if (ia && ib) {
    lo = a;
    hi = b;
    return true;
  }
  if (ia != ib) {
    const Point r = edge_root(domain, a, b);
    lo = ia ? a : r;
    hi = ia ? r : b;
    return true;
  }
  const Point m{0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])};
  if (!domain.inside(m)) return false;
  lo = edge_root(domain, m, a);
  hi = edge_root(domain, m, b);
  return true;
}

/// Iterated Gauss rule: the outer variable runs along the axis the boundary
/// is a graph over, split where the boundary crosses the sub-cell edges; each
/// inner line is integrated up to its level-set root.
void sliced_rule(const Box& box, const DomainModel& domain, int ppa, QuadratureRule& rule) {
  const Point c{0.5 * (box.lo[0] + box.hi[0]), 0.5 * (box.lo[1] + box.hi[1])};
  const double step = 1e-7 * (box.hi[0] - box.lo[0]);
  const double gx = domain.level_set({c[0] + step, c[1]}) - domain.level_set({c[0] - step, c[1]});
  const double gy = domain.level_set({c[0], c[1] + step}) - domain.level_set({c[0], c[1] - step});
  const int inner = std::abs(gy) >= std::abs(gx) ? 1 : 0;
  const int outer = 1 - inner;
  auto point = [&](double t, double s) {
    Point p;
    p[static_cast<std::size_t>(outer)] = t;
    p[static_cast<std::size_t>(inner)] = s;
    return p;
  };
  const double t0 = box.lo[static_cast<std::size_t>(outer)], t1 = box.hi[static_cast<std::size_t>(outer)];
  const double s0 = box.lo[static_cast<std::size_t>(inner)], s1 = box.hi[static_cast<std::size_t>(inner)];
  std::vector<double> breaks{t0, t1};
  for (double s : {s0, s1}) {
    const Point a = point(t0, s), b = point(t1, s);
    if (domain.inside(a) != domain.inside(b)) breaks.push_back(edge_root(domain, a, b)[static_cast<std::size_t>(outer)]);
  }
  std::sort(breaks.begin(), breaks.end());
  const auto [xi, wi] = gauss_legendre(ppa);
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double ta = breaks[k], tb = breaks[k + 1];
    if (!(tb > ta)) continue;
    for (std::size_t a = 0; a < xi.size(); ++a) {
      const double t = 0.5 * (ta + tb) + 0.5 * (tb - ta) * xi[a];
      Point lo, hi;
      if (!inside_interval(domain, point(t, s0), point(t, s1), lo, hi)) continue;
      const double sa = lo[static_cast<std::size_t>(inner)], sb = hi[static_cast<std::size_t>(inner)];
      if (!(sb > sa)) continue;
      for (std::size_t b = 0; b < xi.size(); ++b) {
        const double s = 0.5 * (sa + sb) + 0.5 * (sb - sa) * xi[b];
        rule.points.push_back({point(t, s), 0.25 * (tb - ta) * (sb - sa) * wi[a] * wi[b]});
      }
    }
  }
}

void subdivide(const Box& box, int level, const DomainModel& domain, int ppa, int depth, StraddleRule straddle,
               QuadratureRule& rule) {
  const CellClass c = level == 0 ? CellClass::Boundary : classify_box(domain, box);
  if (c == CellClass::Exterior) return;
  if (c == CellClass::Interior) {
    const QuadratureRule g = gauss_box(box, domain.dim, ppa);
    rule.points.insert(rule.points.end(), g.points.begin(), g.points.end());
    return;
  }
  if (level >= depth) {
    if (straddle == StraddleRule::Clipped || (straddle == StraddleRule::Sliced && domain.dim == 1)) {
      clipped_rule(box, domain, ppa, rule);
      return;
    }
    if (straddle == StraddleRule::Sliced) {
      sliced_rule(box, domain, ppa, rule);
      return;
    }
    Point mid{0.5 * (box.lo[0] + box.hi[0]), 0.5 * (box.lo[1] + box.hi[1])};
    double area = box.hi[0] - box.lo[0];
    if (domain.dim == 2) area *= box.hi[1] - box.lo[1];
    else mid[1] = 0.0;
    if (domain.inside(mid)) rule.points.push_back({mid, area});
    return;
  }
  const Point mid{0.5 * (box.lo[0] + box.hi[0]), 0.5 * (box.lo[1] + box.hi[1])};
  const int ny = domain.dim == 2 ? 2 : 1;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < ny; ++b) {
      Box child = box;
      child.lo[0] = a == 0 ? box.lo[0] : mid[0];
      child.hi[0] = a == 0 ? mid[0] : box.hi[0];
      if (domain.dim == 2) {
        child.lo[1] = b == 0 ? box.lo[1] : mid[1];
        child.hi[1] = b == 0 ? mid[1] : box.hi[1];
      }
      subdivide(child, level + 1, domain, ppa, depth, straddle, rule);
    }
  }
}

}  // namespace

QuadratureRule cell_quadrature(const Box& cell, CellClass cls, const DomainModel& domain, int points_per_axis,
                               int depth, StraddleRule straddle) {
  switch (cls) {
    case CellClass::Interior: {
      QuadratureRule r = gauss_box(cell, domain.dim, points_per_axis);
      r.kind = QuadKind::InteriorGauss;
      return r;
    }
    case CellClass::Boundary: {
      QuadratureRule r;
      r.kind = QuadKind::CutCell;
      subdivide(cell, 0, domain, points_per_axis, depth, straddle, r);
      return r;
    }
    case CellClass::Exterior: break;
  }
  throw Error(ErrorKind::InvalidArgument, "no quadrature on exterior cells");
}

std::vector<BoundaryQuadPoint> boundary_quadrature(const std::vector<BoundaryCurve>& part, const GridSpec& grid,
                                                   int points_per_piece) {
  std::vector<BoundaryQuadPoint> out;
  const auto [xi, wi] = gauss_legendre(points_per_piece);
  auto cell_of = [&grid](const Point& x, const Vec& n) {
    const double eps = 1e-9 * grid.h();
    return grid.cell_of({x[0] - eps * n[0], x[1] - eps * n[1]});
  };
  for (const auto& curve : part) {
    if (!curve.parameterized())
      throw Error(ErrorKind::UnparameterizedBoundary, "boundary piece needs a parameterization for quadrature");
    if (curve.kind() == BoundaryCurve::Kind::EndPoint) {
      const Point x = curve.point(0.0);
      const Vec n = curve.outward_normal(0.0);
      out.push_back({x, n, 1.0, cell_of(x, n)});
      continue;
    }
    std::vector<double> breaks{0.0};
    for (double t : curve.grid_crossings(grid)) breaks.push_back(t);
    breaks.push_back(1.0);
    for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
      const double half = 0.5 * (breaks[s + 1] - breaks[s]);
      const double mid = 0.5 * (breaks[s + 1] + breaks[s]);
      for (std::size_t q = 0; q < xi.size(); ++q) {
        const double t = mid + half * xi[q];
        const Vec d = curve.derivative(t);
        const Point x = curve.point(t);
        const Vec n = curve.outward_normal(t);
        out.push_back({x, n, half * wi[q] * std::hypot(d[0], d[1]), cell_of(x, n)});
      }
    }
  }
  return out;
}

DomainQuadrature DomainQuadrature::build(const DomainModel& domain, const CellMap& cells, int order,
                                         const QuadratureOptions& options) {
  DomainQuadrature q;
  q.grid = cells.grid();
  const int ppa = options.points_per_axis > 0 ? options.points_per_axis : order;
  const int bpp = options.boundary_points > 0 ? options.boundary_points : order + 2;
  for (CellClass cls : {CellClass::Interior, CellClass::Boundary}) {
    for (const Index& l : cells.cells(cls)) {
      CellRule cr{l, cell_quadrature(cells.grid().cell_box(l), cls, domain, ppa, options.depth, options.straddle)};
      if (!cr.rule.points.empty()) q.cells.push_back(std::move(cr));
    }
  }
  std::sort(q.cells.begin(), q.cells.end(), [](const CellRule& a, const CellRule& b) { return a.cell < b.cell; });
  q.neumann = boundary_quadrature(domain.neumann, cells.grid(), bpp);
  q.robin = boundary_quadrature(domain.robin, cells.grid(), bpp);
  return q;
}

DomainQuadrature DomainQuadrature::restricted(const std::function<bool(const Index&)>& keep) const {
  DomainQuadrature q;
  q.grid = grid;
  for (const auto& c : cells)
    if (keep(c.cell)) q.cells.push_back(c);
  for (const auto& p : neumann)
    if (keep(p.cell)) q.neumann.push_back(p);
  for (const auto& p : robin)
    if (keep(p.cell)) q.robin.push_back(p);
  return q;
}

double DomainQuadrature::volume() const {
  double v = 0.0;
  for (const auto& c : cells) v += c.rule.sum_weights();
  return v;
}

std::size_t DomainQuadrature::point_count() const {
  std::size_t n = 0;
  for (const auto& c : cells) n += c.rule.points.size();
  return n;
}

}  // namespace webs
