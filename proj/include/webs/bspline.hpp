#pragma once

#include <vector>

#include "webs/types.hpp"

namespace webs {

/// Order n of a uniform B-spline (polynomial degree n - 1). Order 2 is the
/// hat function; order 3 is the quadratic spline.
class SplineOrder {
 public:
  explicit SplineOrder(int n);
  int value() const { return n_; }
  int degree() const { return n_ - 1; }

 private:
  int n_;
};

/// Uniform grid of width h in dimension 1 or 2. Cell l is h([0,1]^m + l).
class GridSpec {
 public:
  GridSpec(double h, int dim);

  double h() const { return h_; }
  int dim() const { return dim_; }

  Index cell_of(const Point& x) const;
  Box cell_box(const Index& l) const;
  Point cell_center(const Index& l) const;

 private:
  double h_;
  int dim_;
};

/// Cardinal B-spline b^n supported on [0, n), via the uniform-knot recurrence.
/// Half-open convention: b^n(n) = 0 and knots take the right-continuous piece.
double eval_cardinal(SplineOrder n, double x);

/// d-th derivative of b^n as the d-th backward difference of b^{n-d}.
/// Returns 0 when d >= n (those derivatives are distributional).
double eval_cardinal_derivative(SplineOrder n, double x, int d);

/// prod_mu b^n(x_mu / h - k_mu)
double eval_tensor(SplineOrder n, const GridSpec& grid, const Index& k, const Point& x);
Vec eval_gradient(SplineOrder n, const GridSpec& grid, const Index& k, const Point& x);
SymMat2 eval_hessian(SplineOrder n, const GridSpec& grid, const Index& k, const Point& x);

/// Tensor-product translates b_{k,h} on a grid. With `normalized` every
/// translate is multiplied by h^{-m/2}, which makes the L2 norm independent
/// of h.
class UniformBSplineBasis {
 public:
  struct LocalValue {
    Index k;
    Jet jet;
  };

  UniformBSplineBasis(SplineOrder n, GridSpec grid, bool normalized = false);

  SplineOrder order() const { return n_; }
  const GridSpec& grid() const { return grid_; }
  bool normalized() const { return normalized_; }

  double value(const Index& k, const Point& x) const;
  Vec gradient(const Index& k, const Point& x) const;
  SymMat2 hessian(const Index& k, const Point& x) const;

  /// All n^m translates whose support contains x, with derivatives up to
  /// second order. `out` is overwritten.
  void local(const Point& x, std::vector<LocalValue>& out) const;

 private:
  double scale() const;

  SplineOrder n_;
  GridSpec grid_;
  bool normalized_;
};

/// Two-scale relation: b^n(x) = sum_q mask[q] b^n(2x - q), q = 0..n.
std::vector<double> refinement_mask(SplineOrder n);

}  // namespace webs
