#pragma once

#include <vector>

#include "webs/geometry.hpp"

namespace webs {

/// Signed distance to the line through `point` with unit inward normal.
Jet half_plane_primitive(const Point& point, const Vec& inward_normal, const Point& x);

/// (r^2 - |x - c|^2) / (2r): positive inside the disk, first-order zero on
/// the circle. With `inside == false` the sign is flipped.
Jet disk_primitive(const Point& center, double radius, bool inside, const Point& x);

/// Rvachev conjunction a + b - sqrt(a^2 + b^2) with derivatives. At the
/// joint a = b = 0 the smooth part a + b is returned.
Jet r_conjunction(const Jet& a, const Jet& b);

/// Weight vanishing on the given Dirichlet pieces, combined with the
/// R-conjunction. Segments become half-planes, arcs disks (or their
/// complement), 1-D end points half-lines. An empty list gives w == 1.
/// Throws UnsupportedBoundary for implicit pieces.
WeightFunction weight_rfunction(const std::vector<BoundaryCurve>& dirichlet);

/// (x^2 + y^2 - 1)(4 - x^2 - y^2), vanishing on r = 1 and r = 2.
WeightFunction annulus_weight();

/// x (1 - x) on the unit interval.
WeightFunction interval_weight();

}  // namespace webs
