#pragma once

#include <utility>
#include <vector>

#include "webs/bspline.hpp"
#include "webs/geometry.hpp"
#include "webs/grid.hpp"

namespace webs {

/// Finds, for an outer index j, the closest n^m block of inner indices
/// {alpha_mu <= i_mu <= alpha_mu + n - 1}. Closeness is the Chebyshev
/// distance from j to the block; ties go to the smaller L1 distance, then to
/// the lexicographically smallest base alpha.
class InnerArrayFinder {
 public:
  InnerArrayFinder(const std::vector<Index>& inner, SplineOrder n, int dim);

  /// Base alpha of I(j). Throws NoInnerArray if I holds no full block.
  Index closest(const Index& j) const;

  const std::vector<Index>& candidates() const { return bases_; }

 private:
  SplineOrder n_;
  int dim_;
  std::vector<Index> bases_;
};

Index closest_index_array(const Index& j, const std::vector<Index>& inner, SplineOrder n, int dim);

/// e_{i,j} = prod_mu prod_{l != i_mu} (j_mu - l) / (i_mu - l) over the block
/// with base alpha, for every i in the block (lexicographic order).
std::vector<std::pair<Index, double>> extension_coeffs(const Index& j, const Index& alpha, SplineOrder n, int dim);

/// A finite family of functions phi_r = s_r * w * sum_k c_{r,k} b_{k,h}.
/// Covers the WEB-splines (s_r = 1 / w(x_i), terms b_i + sum_j e_{i,j} b_j),
/// the unweighted extended splines, and plain weighted B-splines.
class SplineBasis {
 public:
  struct Function {
    Index i{0, 0};
    Point center{0.0, 0.0};
    double scale = 1.0;
    std::vector<std::pair<Index, double>> terms;
  };

  struct LocalValue {
    int r;
    Jet jet;
  };

  SplineBasis(SplineOrder n, GridSpec grid, WeightFunction weight, std::vector<Function> functions);

  SplineOrder order() const { return bsplines_.order(); }
  const GridSpec& grid() const { return bsplines_.grid(); }
  const WeightFunction& weight() const { return weight_; }
  int size() const { return static_cast<int>(functions_.size()); }
  const Function& function(int r) const { return functions_[static_cast<std::size_t>(r)]; }

  /// Every basis function that may be nonzero at x, with value, gradient and
  /// Hessian. `out` is overwritten.
  void local(const Point& x, std::vector<LocalValue>& out) const;

  /// Spline part sum_k c_{r,k} b_k without weight or scale, for all r active at x.
  void local_splines(const Point& x, std::vector<LocalValue>& out) const;

  /// Direct evaluation of one function from its term list.
  Jet eval(int r, const Point& x) const;

  /// Coefficient vector d_k of sum_r coeffs[r] s_r sum_k c_{r,k} b_k on the
  /// B-spline indices, as (k, d_k) pairs sorted by k.
  std::vector<std::pair<Index, double>> bspline_coefficients(const std::vector<double>& coeffs) const;

 private:
  const std::vector<std::pair<int, double>>* expansion(const Index& k) const;

  UniformBSplineBasis bsplines_;
  WeightFunction weight_;
  std::vector<Function> functions_;
  Index k_lo_{0, 0};
  Index k_hi_{0, 0};
  std::vector<std::vector<std::pair<int, double>>> table_;
};

/// WEB-splines B_i = w / w(x_i) (b_i + sum_j e_{i,j} b_j), i in I.
/// Throws DegenerateDomain if some w(x_i) is not positive.
SplineBasis build_web_basis(const DomainModel& domain, const GridSpec& grid, SplineOrder n, const IndexSets& sets);

/// Extended B-splines b_i + sum_j e_{i,j} b_j without weight.
SplineBasis build_extended_basis(const GridSpec& grid, SplineOrder n, const IndexSets& sets);

/// w b_k for every relevant k (no extension).
SplineBasis build_weighted_bspline_basis(const DomainModel& domain, const GridSpec& grid, SplineOrder n,
                                         const IndexSets& sets);

double eval_web(const SplineBasis& basis, int r, const Point& x);
Vec eval_web_gradient(const SplineBasis& basis, int r, const Point& x);

/// Coefficients on the B-splines of the grid h/2 representing
/// sum_k d_k b_{k,h} exactly, via the two-scale relation.
std::vector<std::pair<Index, double>> refine_coefficients(const std::vector<std::pair<Index, double>>& coarse,
                                                          SplineOrder n, int dim);

}  // namespace webs
