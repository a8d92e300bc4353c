#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "webs/geometry.hpp"
#include "webs/grid.hpp"

namespace webs {

struct QuadPoint {
  Point x;
  double weight;
};

struct BoundaryQuadPoint {
  Point x;
  Vec normal;
  double weight;
  Index cell;
};

enum class QuadKind { InteriorGauss, CutCell, BoundaryCurve };

struct QuadratureRule {
  QuadKind kind = QuadKind::InteriorGauss;
  std::vector<QuadPoint> points;

  double sum_weights() const;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int count);

/// Rule on sub-cells that still straddle the boundary at the last level.
/// Centroid keeps the sub-cell centroid (weight = sub-cell area) when it is
/// inside. Clipped cuts the sub-cell along the polygon through the level-set
/// roots on its edges and integrates the inside part with Gauss rules.
/// Sliced integrates line by line up to the level-set root on each Gauss
/// line, which keeps the curvature of the boundary.
enum class StraddleRule { Centroid, Clipped, Sliced };

struct QuadratureOptions {
  /// Gauss points per axis on full (sub)cells; 0 means the spline order n.
  int points_per_axis = 0;
  /// Dyadic subdivision depth for boundary cells.
  int depth = 4;
  /// Gauss points per boundary piece; 0 means n + 2.
  int boundary_points = 0;
  StraddleRule straddle = StraddleRule::Sliced;
};

/// Tensor Gauss rule on a full box.
QuadratureRule gauss_box(const Box& box, int dim, int points_per_axis);

/// Interior: tensor Gauss. Boundary: dyadic subdivision to `depth`; sub-cells
/// inside get Gauss, straddling sub-cells at the last level use `straddle`.
/// Exterior cells violate the precondition.
QuadratureRule cell_quadrature(const Box& cell, CellClass cls, const DomainModel& domain, int points_per_axis,
                               int depth, StraddleRule straddle = StraddleRule::Sliced);

/// Composite Gauss along each piece, split where it crosses grid lines.
/// Throws UnparameterizedBoundary for implicit pieces.
std::vector<BoundaryQuadPoint> boundary_quadrature(const std::vector<BoundaryCurve>& part, const GridSpec& grid,
                                                   int points_per_piece);

/// Volume rules for every non-exterior cell plus the Neumann and Robin
/// boundary rules of one grid.
struct DomainQuadrature {
  struct CellRule {
    Index cell;
    QuadratureRule rule;
  };

  GridSpec grid{1.0, 2};
  std::vector<CellRule> cells;
  std::vector<BoundaryQuadPoint> neumann;
  std::vector<BoundaryQuadPoint> robin;

  static DomainQuadrature build(const DomainModel& domain, const CellMap& cells, int order,
                                const QuadratureOptions& options = {});

  /// Keeps the cells (and boundary points lying in cells) accepted by `keep`.
  DomainQuadrature restricted(const std::function<bool(const Index&)>& keep) const;

  double volume() const;
  std::size_t point_count() const;
};

}  // namespace webs
