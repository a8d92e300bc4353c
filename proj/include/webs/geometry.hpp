#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "webs/bspline.hpp"
#include "webs/types.hpp"

namespace webs {

enum class CellClass { Interior, Boundary, Exterior };

enum class BoundaryPart { Dirichlet = 1, Neumann = 2, Robin = 3 };

/// A piece of the domain boundary. Parameterized curves run over t in [0, 1]
/// and are oriented counter-clockwise (domain on the left), so the outward
/// normal is the tangent rotated by -90 degrees. Implicit pieces only know
/// their zero set and cannot be integrated over or turned into a weight.
class BoundaryCurve {
 public:
  enum class Kind { Segment, Arc, EndPoint, Implicit };

  static BoundaryCurve segment(Point a, Point b);
  static BoundaryCurve arc(Point center, double radius, double theta0, double theta1);
  /// End point of a 1-D interval with outward direction +1 or -1.
  static BoundaryCurve end_point(double x, double outward);
  static BoundaryCurve implicit(std::function<double(const Point&)> zero_set);

  Kind kind() const { return kind_; }
  bool parameterized() const { return kind_ != Kind::Implicit; }

  Point point(double t) const;
  Vec derivative(double t) const;
  Vec outward_normal(double t) const;
  double length() const;

  /// Parameters in (0, 1) where the curve crosses a grid line, sorted.
  std::vector<double> grid_crossings(const GridSpec& grid) const;

  double distance(const Point& x) const;

  // Geometry accessors (meaningful for the matching kind only).
  Point a() const { return a_; }
  Point b() const { return b_; }
  Point center() const { return a_; }
  double radius() const { return radius_; }
  double theta0() const { return theta0_; }
  double theta1() const { return theta1_; }

 private:
  Kind kind_ = Kind::Segment;
  Point a_{0.0, 0.0};
  Point b_{0.0, 0.0};
  double radius_ = 0.0;
  double theta0_ = 0.0;
  double theta1_ = 0.0;
  std::function<double(const Point&)> zero_set_;
};

/// Weight function w with value, gradient and Hessian. It vanishes on the
/// Dirichlet part and is positive inside the domain.
class WeightFunction {
 public:
  using Fn = std::function<Jet(const Point&)>;

  /// w == 1
  WeightFunction();
  explicit WeightFunction(Fn fn, int dirichlet_order = 1);

  Jet operator()(const Point& x) const { return fn_(x); }
  double value(const Point& x) const { return fn_(x).value; }
  Vec gradient(const Point& x) const { return fn_(x).grad; }
  int dirichlet_order() const { return dirichlet_order_; }

 private:
  Fn fn_;
  int dirichlet_order_ = 1;
};

/// Implicitly described domain: level set (positive inside), boundary split
/// into Dirichlet/Neumann/Robin pieces, and the weight for the Dirichlet part.
struct DomainModel {
  std::string name;
  int dim = 2;
  Box bbox;
  std::function<double(const Point&)> level_set;
  /// Optional exact cell classifier; empty result falls back to sampling.
  std::function<std::optional<CellClass>(const Box&)> classify_override;
  std::vector<BoundaryCurve> dirichlet;
  std::vector<BoundaryCurve> neumann;
  std::vector<BoundaryCurve> robin;
  WeightFunction weight;

  bool inside(const Point& x) const { return level_set(x) >= 0.0; }
  bool strictly_inside(const Point& x) const { return level_set(x) > 0.0; }

  const std::vector<BoundaryCurve>& part(BoundaryPart p) const;

  /// Which part a boundary point belongs to, or nothing if it is farther
  /// than `tol` from every piece. Shared end points resolve in the order
  /// Dirichlet, Neumann, Robin.
  std::optional<BoundaryPart> boundary_part(const Point& x, double tol = 1e-9) const;
};

}  // namespace webs
