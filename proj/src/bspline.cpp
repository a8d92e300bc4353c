#include "webs/bspline.hpp"

#include <cmath>

namespace webs {

SplineOrder::SplineOrder(int n) : n_(n) {
  if (n < 2 || n > 12) throw Error(ErrorKind::InvalidArgument, "spline order must lie in [2, 12]");
}

GridSpec::GridSpec(double h, int dim) : h_(h), dim_(dim) {
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "grid width must be positive");
  if (dim != 1 && dim != 2) throw Error(ErrorKind::InvalidArgument, "only dimensions 1 and 2 are supported");
}

Index GridSpec::cell_of(const Point& x) const {
  Index l{0, 0};
  for (int mu = 0; mu < dim_; ++mu) l[mu] = static_cast<int>(std::floor(x[mu] / h_));
  return l;
}

Box GridSpec::cell_box(const Index& l) const {
  Box b;
  for (int mu = 0; mu < dim_; ++mu) {
    b.lo[mu] = h_ * l[mu];
    b.hi[mu] = h_ * (l[mu] + 1);
  }
  return b;
}

Point GridSpec::cell_center(const Index& l) const {
  Point c{0.0, 0.0};
  for (int mu = 0; mu < dim_; ++mu) c[mu] = h_ * (l[mu] + 0.5);
  return c;
}

namespace {

// b^p(x) for p >= 1 via the triangular recurrence; p == 0 is treated as the
// zero function.
double cardinal(int p, double x) {
  if (p < 1 || x < 0.0 || x >= p) return 0.0;
  double v[16];
  for (int i = 0; i < p; ++i) v[i] = (x >= i && x < i + 1) ? 1.0 : 0.0;
  for (int q = 2; q <= p; ++q) {
    for (int i = 0; i + q <= p; ++i) {
      const double t = x - i;
      v[i] = (t * v[i] + (q - t) * v[i + 1]) / (q - 1);
    }
  }
  return v[0];
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

double eval_cardinal(SplineOrder n, double x) { return cardinal(n.value(), x); }

double eval_cardinal_derivative(SplineOrder n, double x, int d) {
  const int p = n.value() - d;
  if (d == 0) return cardinal(n.value(), x);
  if (p < 1) return 0.0;
  double s = 0.0;
  for (int q = 0; q <= d; ++q) s += ((q % 2) ? -1.0 : 1.0) * binomial(d, q) * cardinal(p, x - q);
  return s;
}

double eval_tensor(SplineOrder n, const GridSpec& grid, const Index& k, const Point& x) {
  double v = 1.0;
  for (int mu = 0; mu < grid.dim(); ++mu) v *= eval_cardinal(n, x[mu] / grid.h() - k[mu]);
  return v;
}

Vec eval_gradient(SplineOrder n, const GridSpec& grid, const Index& k, const Point& x) {
  return UniformBSplineBasis(n, grid).gradient(k, x);
}

SymMat2 eval_hessian(SplineOrder n, const GridSpec& grid, const Index& k, const Point& x) {
  return UniformBSplineBasis(n, grid).hessian(k, x);
}

UniformBSplineBasis::UniformBSplineBasis(SplineOrder n, GridSpec grid, bool normalized)
    : n_(n), grid_(grid), normalized_(normalized) {}

double UniformBSplineBasis::scale() const {
  return normalized_ ? std::pow(grid_.h(), -0.5 * grid_.dim()) : 1.0;
}

double UniformBSplineBasis::value(const Index& k, const Point& x) const {
  return scale() * eval_tensor(n_, grid_, k, x);
}

Vec UniformBSplineBasis::gradient(const Index& k, const Point& x) const {
  const double h = grid_.h();
  if (grid_.dim() == 1) return {scale() * eval_cardinal_derivative(n_, x[0] / h - k[0], 1) / h, 0.0};
  const double t0 = x[0] / h - k[0];
  const double t1 = x[1] / h - k[1];
  const double v0 = eval_cardinal(n_, t0);
  const double v1 = eval_cardinal(n_, t1);
  const double d0 = eval_cardinal_derivative(n_, t0, 1) / h;
  const double d1 = eval_cardinal_derivative(n_, t1, 1) / h;
  return {scale() * d0 * v1, scale() * v0 * d1};
}

SymMat2 UniformBSplineBasis::hessian(const Index& k, const Point& x) const {
  const double h = grid_.h();
  if (grid_.dim() == 1) return {scale() * eval_cardinal_derivative(n_, x[0] / h - k[0], 2) / (h * h), 0.0, 0.0};
  const double t0 = x[0] / h - k[0];
  const double t1 = x[1] / h - k[1];
  const double v0 = eval_cardinal(n_, t0), v1 = eval_cardinal(n_, t1);
  const double d0 = eval_cardinal_derivative(n_, t0, 1) / h, d1 = eval_cardinal_derivative(n_, t1, 1) / h;
  const double s0 = eval_cardinal_derivative(n_, t0, 2) / (h * h);
  const double s1 = eval_cardinal_derivative(n_, t1, 2) / (h * h);
  const double c = scale();
  return {c * s0 * v1, c * d0 * d1, c * v0 * s1};
}

void UniformBSplineBasis::local(const Point& x, std::vector<LocalValue>& out) const {
  out.clear();
  const int n = n_.value();
  const double h = grid_.h();
  const Index cell = grid_.cell_of(x);
  // 1-D factors per axis: value, first and second derivative.
  double f[2][16][3];
  for (int mu = 0; mu < grid_.dim(); ++mu) {
    for (int a = 0; a < n; ++a) {
      const double t = x[mu] / h - (cell[mu] - n + 1 + a);
      f[mu][a][0] = eval_cardinal(n_, t);
      f[mu][a][1] = eval_cardinal_derivative(n_, t, 1) / h;
      f[mu][a][2] = eval_cardinal_derivative(n_, t, 2) / (h * h);
    }
  }
  const double c = scale();
  if (grid_.dim() == 1) {
    for (int a = 0; a < n; ++a) {
      LocalValue lv;
      lv.k = {cell[0] - n + 1 + a, 0};
      lv.jet.value = c * f[0][a][0];
      lv.jet.grad = {c * f[0][a][1], 0.0};
      lv.jet.hess = {c * f[0][a][2], 0.0, 0.0};
      out.push_back(lv);
    }
    return;
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      LocalValue lv;
      lv.k = {cell[0] - n + 1 + a, cell[1] - n + 1 + b};
      const auto& p = f[0][a];
      const auto& q = f[1][b];
      lv.jet.value = c * p[0] * q[0];
      lv.jet.grad = {c * p[1] * q[0], c * p[0] * q[1]};
      lv.jet.hess = {c * p[2] * q[0], c * p[1] * q[1], c * p[0] * q[2]};
      out.push_back(lv);
    }
  }
}

std::vector<double> refinement_mask(SplineOrder n) {
  const int p = n.value();
  std::vector<double> mask(p + 1);
  for (int q = 0; q <= p; ++q) mask[q] = binomial(p, q) * std::pow(2.0, 1 - p);
  return mask;
}

}  // namespace webs
