#pragma once

#include <optional>
#include <string>
#include <vector>

#include "webs/geometry.hpp"
#include "webs/problem.hpp"
#include "webs/solution.hpp"

namespace webs {

struct ProblemPreset {
  std::string name;
  DomainModel domain;
  ProblemData data;
  /// Closed-form solution pair, when known.
  FieldPair exact;
  /// Set when P is not uniformly positive definite on the domain.
  bool warn_nonelliptic = false;

  bool has_exact() const { return static_cast<bool>(exact); }
  bool dirichlet_only() const { return domain.neumann.empty() && domain.robin.empty(); }
};

/// {x^2 + y^2 <= 1, x, y >= 0} with exact cell classification. Pieces run
/// counter-clockwise: y = 0 from (0,0) to (1,0), the arc, x = 0 downwards.
struct QuarterDiskPieces {
  BoundaryCurve bottom;
  BoundaryCurve arc;
  BoundaryCurve left;
};
QuarterDiskPieces quarter_disk_pieces();
DomainModel quarter_disk(std::vector<BoundaryCurve> dirichlet, std::vector<BoundaryCurve> neumann,
                         std::vector<BoundaryCurve> robin, WeightFunction weight);

/// The population model: adults u1 and children u2 on the quarter disk,
/// P = [[x^2 y, y], [y, y]], -div(P grad u1) - 0.05 y u2 = -e^{x+y},
/// div(P grad u2) + 2 x^2 u1 = -e^{x+y}, u = y on x = 0, unit outward flux
/// on y = 0, homogeneous Robin with unit coefficient on the arc, weight w = x.
ProblemPreset preset_population();

/// The same equations on the quarter annulus 1 <= r <= 2 with the weight
/// (r^2 - 1)(4 - r^2), Dirichlet u = y on both arcs, Neumann on y = 0 and
/// Robin on x = 0.
ProblemPreset preset_population_annulus();

/// kind: poisson1d, coupled_smooth, dirichlet_only, dirichlet_neumann.
/// Throws UnknownKind.
ProblemPreset preset_manufactured(const std::string& kind);

/// Any preset by name (the CLI vocabulary). Throws UnknownKind.
ProblemPreset make_preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace webs
