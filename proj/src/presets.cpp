#include "webs/presets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "webs/weight.hpp"

namespace webs {

namespace {

constexpr double kPi = std::numbers::pi;

Jet jet_y(const Point& x) {
  Jet j;
  j.value = x[1];
  j.grad = {0.0, 1.0};
  return j;
}

ScalarField constant(double c) {
  return [c](const Point&) { return c; };
}

MatrixField identity_matrix() {
  return [](const Point&) { return SymMat2{1.0, 0.0, 1.0}; };
}

/// Which boundary piece of the quarter disk (or annulus) x lies on, for
/// normals of manufactured data: -(1,0) on x = 0, -(0,1) on y = 0, radial
/// (signed) otherwise.
Vec quadrant_normal(const Point& x, double inner_radius) {
  if (std::abs(x[1]) < 1e-12) return {0.0, -1.0};
  if (std::abs(x[0]) < 1e-12) return {-1.0, 0.0};
  const double r = std::hypot(x[0], x[1]);
  const double s = (inner_radius > 0.0 && std::abs(r - inner_radius) < 1e-9) ? -1.0 : 1.0;
  return {s * x[0] / r, s * x[1] / r};
}

/// Fills f, g, h from an exact pair in the signed convention of ProblemData.
void manufacture(ProblemData& d, const FieldPair& exact, double inner_radius) {
  auto data = std::make_shared<ProblemData>(d);
  d.f[0] = [data, exact](const Point& x) {
    const auto u = exact(x);
    return neg_div_flux(*data, x, u[0]) - data->tau[1](x) * u[1].value;
  };
  d.f[1] = [data, exact](const Point& x) {
    const auto u = exact(x);
    return -neg_div_flux(*data, x, u[1]) + data->tau[0](x) * u[0].value;
  };
  auto normal_flux = [data, exact, inner_radius](int i, const Point& x) {
    const auto u = exact(x);
    return dot(quadrant_normal(x, inner_radius), data->P(x).apply(u[static_cast<std::size_t>(i)].grad));
  };
  d.g[0] = [normal_flux](const Point& x) { return normal_flux(0, x); };
  d.g[1] = [normal_flux](const Point& x) { return -normal_flux(1, x); };
  d.h[0] = [normal_flux, data, exact](const Point& x) {
    return normal_flux(0, x) + data->sigma[0](x) * exact(x)[0].value;
  };
  d.h[1] = [normal_flux, data, exact](const Point& x) {
    return -normal_flux(1, x) + data->sigma[1](x) * exact(x)[1].value;
  };
}

std::optional<CellClass> classify_quadrant_ring(const Box& b, double r_in, double r_out) {
  if (b.hi[0] <= 0.0 || b.hi[1] <= 0.0) return CellClass::Exterior;
  const double nx = std::max(b.lo[0], 0.0), ny = std::max(b.lo[1], 0.0);
  const double rmin = std::hypot(nx, ny);
  const double rmax = std::hypot(b.hi[0], b.hi[1]);
  if (rmin >= r_out || rmax <= r_in) return CellClass::Exterior;
  if (b.lo[0] >= 0.0 && b.lo[1] >= 0.0 && rmax <= r_out && rmin >= r_in) return CellClass::Interior;
  return CellClass::Boundary;
}

ProblemData population_data() {
  ProblemData d;
  d.P = [](const Point& x) { return SymMat2{x[0] * x[0] * x[1], x[1], x[1]}; };
  d.div_P = [](const Point& x) { return Vec{2.0 * x[0] * x[1] + 1.0, 1.0}; };
  d.tau[0] = [](const Point& x) { return 2.0 * x[0] * x[0]; };
  d.tau[1] = [](const Point& x) { return 0.05 * x[1]; };
  const ScalarField rhs = [](const Point& x) { return -std::exp(x[0] + x[1]); };
  d.f = {rhs, rhs};
  // The printed conditions nu.P grad u_i = 1 and nu.P grad u_i + u_i = 0
  // hold for both species; species 2 carries a minus sign in front of its
  // flux, so its stored g and sigma flip sign.
  d.g = {constant(1.0), constant(-1.0)};
  d.sigma = {constant(1.0), constant(-1.0)};
  d.h = {constant(0.0), constant(0.0)};
  d.lift = {jet_y, jet_y};
  return d;
}

ProblemPreset poisson1d() {
  ProblemPreset p;
  p.name = "poisson1d";
  DomainModel& dm = p.domain;
  dm.name = "unit interval";
  dm.dim = 1;
  dm.bbox = Box{{0.0, 0.0}, {1.0, 0.0}};
  dm.level_set = [](const Point& x) { return x[0] * (1.0 - x[0]); };
  dm.classify_override = [](const Box& b) -> std::optional<CellClass> {
    if (b.hi[0] <= 0.0 || b.lo[0] >= 1.0) return CellClass::Exterior;
    if (b.lo[0] >= 0.0 && b.hi[0] <= 1.0) return CellClass::Interior;
    return CellClass::Boundary;
  };
  dm.dirichlet = {BoundaryCurve::end_point(0.0, -1.0), BoundaryCurve::end_point(1.0, 1.0)};
  dm.weight = interval_weight();
  ProblemData& d = p.data;
  d.P = identity_matrix();
  d.tau = {constant(0.0), constant(0.0)};
  d.sigma = {constant(0.0), constant(0.0)};
  d.f = {constant(1.0), constant(-1.0)};
  d.g = {constant(0.0), constant(0.0)};
  d.h = {constant(0.0), constant(0.0)};
  p.exact = [](const Point& x) {
    Jet j;
    j.value = 0.5 * x[0] * (1.0 - x[0]);
    j.grad = {0.5 - x[0], 0.0};
    j.hess = {-1.0, 0.0, 0.0};
    return std::array<Jet, 2>{j, j};
  };
  return p;
}

ProblemPreset coupled_smooth() {
  ProblemPreset p;
  p.name = "coupled_smooth";
  const auto q = quarter_disk_pieces();
  p.domain = quarter_disk({q.left}, {q.bottom}, {q.arc}, weight_rfunction({q.left}));
  ProblemData& d = p.data;
  d.P = identity_matrix();
  d.tau = {constant(1.0), constant(1.0)};
  // Robin coefficient +1 for both species in the physical sense.
  d.sigma = {constant(1.0), constant(-1.0)};
  d.lift = {jet_y, jet_y};
  p.exact = [](const Point& x) {
    const double a = 0.5 * kPi;
    const double sx = std::sin(a * x[0]), cx = std::cos(a * x[0]);
    const double sy = std::sin(a * x[1]), cy = std::cos(a * x[1]);
    Jet u1;
    u1.value = x[1] + sx * cy;
    u1.grad = {a * cx * cy, 1.0 - a * sx * sy};
    u1.hess = {-a * a * sx * cy, -a * a * cx * sy, -a * a * sx * cy};
    const double s1 = std::sin(1.0 + x[1]), c1 = std::cos(1.0 + x[1]);
    Jet u2;
    u2.value = x[1] + x[0] * s1;
    u2.grad = {s1, 1.0 + x[0] * c1};
    u2.hess = {0.0, c1, -x[0] * s1};
    return std::array<Jet, 2>{u1, u2};
  };
  manufacture(d, p.exact, 0.0);
  return p;
}

ProblemPreset dirichlet_only() {
  ProblemPreset p;
  p.name = "dirichlet_only";
  const auto q = quarter_disk_pieces();
  p.domain = quarter_disk({q.bottom, q.arc, q.left}, {}, {}, weight_rfunction({q.bottom, q.arc, q.left}));
  ProblemData& d = p.data;
  d.P = identity_matrix();
  d.tau = {constant(1.0), constant(1.0)};
  d.sigma = {constant(0.0), constant(0.0)};
  p.exact = [](const Point& x) {
    const double X = x[0], Y = x[1];
    Jet u1;
    u1.value = X * Y * (1.0 - X * X - Y * Y);
    u1.grad = {Y - 3.0 * X * X * Y - Y * Y * Y, X - X * X * X - 3.0 * X * Y * Y};
    u1.hess = {-6.0 * X * Y, 1.0 - 3.0 * X * X - 3.0 * Y * Y, -6.0 * X * Y};
    const double e = std::exp(X);
    Jet u2;
    u2.value = e * u1.value;
    u2.grad = {e * (u1.value + u1.grad[0]), e * u1.grad[1]};
    u2.hess = {e * (u1.value + 2.0 * u1.grad[0] + u1.hess.xx), e * (u1.grad[1] + u1.hess.xy), e * u1.hess.yy};
    return std::array<Jet, 2>{u1, u2};
  };
  manufacture(d, p.exact, 0.0);
  return p;
}

ProblemPreset dirichlet_neumann() {
  ProblemPreset p;
  p.name = "dirichlet_neumann";
  const auto q = quarter_disk_pieces();
  p.domain = quarter_disk({q.left}, {q.bottom, q.arc}, {}, weight_rfunction({q.left}));
  ProblemData& d = p.data;
  d.P = [](const Point& x) { return SymMat2{1.0 + x[0], 0.0, 1.0 + x[1]}; };
  d.div_P = [](const Point&) { return Vec{1.0, 1.0}; };
  // Coupling degenerates on the axes, so part of the domain falls below any
  // positive threshold.
  const ScalarField t = [](const Point& x) { return x[0] * x[1]; };
  d.tau = {t, t};
  d.sigma = {constant(0.0), constant(0.0)};
  d.lift = {jet_y, jet_y};
  p.exact = [](const Point& x) {
    const double X = x[0], Y = x[1];
    Jet u1;
    u1.value = Y + X * std::cos(Y);
    u1.grad = {std::cos(Y), 1.0 - X * std::sin(Y)};
    u1.hess = {0.0, -std::sin(Y), -X * std::cos(Y)};
    const double e = std::exp(Y);
    Jet u2;
    u2.value = Y + X * e;
    u2.grad = {e, 1.0 + X * e};
    u2.hess = {0.0, e, X * e};
    return std::array<Jet, 2>{u1, u2};
  };
  manufacture(d, p.exact, 0.0);
  return p;
}

}  // namespace

QuarterDiskPieces quarter_disk_pieces() {
  return {BoundaryCurve::segment({0.0, 0.0}, {1.0, 0.0}), BoundaryCurve::arc({0.0, 0.0}, 1.0, 0.0, 0.5 * kPi),
          BoundaryCurve::segment({0.0, 1.0}, {0.0, 0.0})};
}

DomainModel quarter_disk(std::vector<BoundaryCurve> dirichlet, std::vector<BoundaryCurve> neumann,
                         std::vector<BoundaryCurve> robin, WeightFunction weight) {
  DomainModel dm;
  dm.name = "quarter disk";
  dm.dim = 2;
  dm.bbox = Box{{0.0, 0.0}, {1.0, 1.0}};
  dm.level_set = [](const Point& x) { return std::min({x[0], x[1], 1.0 - x[0] * x[0] - x[1] * x[1]}); };
  dm.classify_override = [](const Box& b) { return classify_quadrant_ring(b, 0.0, 1.0); };
  dm.dirichlet = std::move(dirichlet);
  dm.neumann = std::move(neumann);
  dm.robin = std::move(robin);
  dm.weight = std::move(weight);
  return dm;
}

ProblemPreset preset_population() {
  ProblemPreset p;
  p.name = "population";
  const auto q = quarter_disk_pieces();
  p.domain = quarter_disk({q.left}, {q.bottom}, {q.arc}, weight_rfunction({q.left}));
  p.data = population_data();
  p.warn_nonelliptic = true;
  return p;
}

ProblemPreset preset_population_annulus() {
  ProblemPreset p;
  p.name = "population_annulus";
  DomainModel& dm = p.domain;
  dm.name = "quarter annulus";
  dm.dim = 2;
  dm.bbox = Box{{0.0, 0.0}, {2.0, 2.0}};
  dm.level_set = [](const Point& x) {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    return std::min({x[0], x[1], (r2 - 1.0) * (4.0 - r2)});
  };
  dm.classify_override = [](const Box& b) { return classify_quadrant_ring(b, 1.0, 2.0); };
  dm.dirichlet = {BoundaryCurve::arc({0.0, 0.0}, 2.0, 0.0, 0.5 * kPi),
                  BoundaryCurve::arc({0.0, 0.0}, 1.0, 0.5 * kPi, 0.0)};
  dm.neumann = {BoundaryCurve::segment({1.0, 0.0}, {2.0, 0.0})};
  dm.robin = {BoundaryCurve::segment({0.0, 2.0}, {0.0, 1.0})};
  dm.weight = annulus_weight();
  p.data = population_data();
  p.warn_nonelliptic = true;
  return p;
}

ProblemPreset preset_manufactured(const std::string& kind) {
  if (kind == "poisson1d") return poisson1d();
  if (kind == "coupled_smooth") return coupled_smooth();
  if (kind == "dirichlet_only") return dirichlet_only();
  if (kind == "dirichlet_neumann") return dirichlet_neumann();
  throw Error(ErrorKind::UnknownKind, "unknown manufactured problem '" + kind + "'");
}

ProblemPreset make_preset(const std::string& name) {
  if (name == "population") return preset_population();
  if (name == "population_annulus") return preset_population_annulus();
  return preset_manufactured(name);
}

std::vector<std::string> preset_names() {
  return {"population", "population_annulus", "poisson1d", "coupled_smooth", "dirichlet_only", "dirichlet_neumann"};
}

}  // namespace webs
