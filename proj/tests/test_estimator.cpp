#include <cmath>

#include <doctest.h>

#include "webs/estimator.hpp"
#include "webs/presets.hpp"
#include "webs/run.hpp"

using namespace webs;

namespace {

struct Setup {
  ProblemPreset preset;
  LevelSolve level;
  DomainQuadrature fine;
  FluxReconstruction flux;

  Setup(const std::string& name, int order, double h, FluxMode mode = FluxMode::Projection,
        QuadratureOptions fine_opt = {})
      : preset(make_preset(name)),
        level(solve(preset, order, h)),
        fine(fine_quadrature(preset.domain, order, h, fine_opt)),
        flux(reconstruct_flux(*level.solution, preset.data, level.system.forms, level.disc.quad, mode,
                              mode == FluxMode::Projection
                                  ? std::make_shared<const SplineBasis>(
                                        build_extended_basis(level.disc.grid, SplineOrder(order), level.disc.sets))
                                  : nullptr)) {}

  static LevelSolve solve(const ProblemPreset& p, int order, double h) {
    SolverConfig cfg;
    cfg.tol = 1e-12;
    AssemblyOptions o;
    o.negate_second_equation = true;
    return solve_level(p, order, h, cfg, o);
  }

  UpperBoundInput input(double theta = 0.0) const {
    UpperBoundInput in;
    in.data = &preset.data;
    in.forms = level.system.forms;
    in.quad = &fine;
    in.uh = level.solution->fields_fn();
    in.flux = &flux;
    in.theta_tilde = theta;
    in.reference = preset.exact;
    in.coupling_mode = CouplingMode::Oracle;
    return in;
  }
};

void check_terms_equal(const EstimatorBreakdown& a, const EstimatorBreakdown& b) {
  auto close = [](double x, double y) { return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)}); };
  for (int i = 0; i < 2; ++i) {
    const SpeciesTerms& s = a.species[static_cast<std::size_t>(i)];
    const SpeciesTerms& t = b.species[static_cast<std::size_t>(i)];
    CHECK(close(s.resid, t.resid));
    CHECK(close(s.robin, t.robin));
    CHECK(close(s.flux, t.flux));
    CHECK(close(s.degenerate, t.degenerate));
    CHECK(close(s.neumann, t.neumann));
    CHECK(close(s.coupling, t.coupling));
  }
  CHECK(close(a.total, b.total));
}

}  // namespace

TEST_CASE("solution inside the trial space gives vanishing estimates") {
  for (FluxMode mode : {FluxMode::Identity, FluxMode::Projection}) {
    const Setup s("poisson1d", 3, 0.25, mode);
    const EstimatorBreakdown e = upper_bound(s.input());
    CHECK(e.total <= 1e-9);
    CHECK(residual_epsilon(s.level.solution->fields_fn(), s.preset.data, s.level.system.forms, s.fine, 3) <= 1e-10);
    CHECK(energy_error(s.preset.data, s.level.system.forms, s.fine, s.preset.exact, s.level.solution->fields_fn()) <= 1e-12);
  }
}

TEST_CASE("projection reproduces a flux of low degree") {
  const Setup proj("poisson1d", 3, 0.25, FluxMode::Projection);
  const Setup ident("poisson1d", 3, 0.25, FluxMode::Identity);
  for (double x : {0.05, 0.3, 0.61, 0.97})
    for (int i = 0; i < 2; ++i) {
      const FluxValue a = proj.flux(i, {x, 0.0}), b = ident.flux(i, {x, 0.0});
      CHECK(std::abs(a.flux[0] - b.flux[0]) <= 1e-9);
      CHECK(std::abs(a.div - b.div) <= 1e-8);
    }
}

TEST_CASE("order 2 has no strong residual") {
  const Setup s("poisson1d", 2, 0.25, FluxMode::Identity);
  try {
    residual_epsilon(s.level.solution->fields_fn(), s.preset.data, s.level.system.forms, s.fine, 2);
    FAIL("expected SecondDerivativeUnavailable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SecondDerivativeUnavailable);
  }
}

TEST_CASE("boundary specializations agree with the general estimate") {
  const Setup d("dirichlet_only", 3, 0.25);
  check_terms_equal(upper_bound(d.input()), upper_bound_dirichlet(d.input()));
  const Setup dn("dirichlet_neumann", 3, 0.25);
  check_terms_equal(upper_bound(dn.input()), upper_bound_dirichlet_neumann(dn.input()));
  const EstimatorBreakdown g = upper_bound(d.input());
  for (const auto& t : g.species) {
    CHECK(t.robin == 0.0);
    CHECK(t.neumann == 0.0);
  }
  const Setup mixed("coupled_smooth", 3, 0.5);
  CHECK_THROWS_AS(upper_bound_dirichlet(mixed.input()), Error);
  CHECK_THROWS_AS(upper_bound_dirichlet_neumann(mixed.input()), Error);
}

TEST_CASE("terms are non-negative and sum to the total") {
  const Setup s("coupled_smooth", 3, 0.25);
  const EstimatorBreakdown e = upper_bound(s.input());
  double sum = 0.0;
  for (const auto& t : e.species) {
    for (double v : {t.resid, t.robin, t.flux, t.degenerate, t.neumann, t.coupling}) CHECK(v >= 0.0);
    sum += t.sum();
  }
  CHECK(e.total == doctest::Approx(sum).epsilon(1e-14));
  const auto rec = e.to_record();
  bool has_total = false, has_flux = false;
  for (const auto& [k, v] : rec) {
    has_total = has_total || k == "total";
    has_flux = has_flux || k == "species1.t_flux";
  }
  CHECK(has_total);
  CHECK(has_flux);
}

TEST_CASE("theta-tilde monotonicity") {
  const Setup s("dirichlet_neumann", 3, 0.25);
  double prev_degenerate = std::numeric_limits<double>::infinity();
  double prev_resid = -1.0;
  for (double theta : {0.4, 0.2, 0.1, 0.05, 0.01, 1e-3}) {
    const EstimatorBreakdown e = upper_bound(s.input(theta));
    CHECK(e.theta_tilde == theta);
    double deg = 0.0, res = 0.0;
    for (const auto& t : e.species) {
      deg += t.degenerate;
      res += t.resid;
    }
    CHECK(deg <= prev_degenerate * (1 + 1e-12));
    CHECK(res >= prev_resid);
    prev_degenerate = deg;
    prev_resid = res;
  }
  const double def = default_theta_tilde(s.preset.data, s.fine);
  CHECK(def > 0.0);
  CHECK(in_tau_positive_part(s.preset.data, {0.5, 0.5}, def));
  CHECK(!in_tau_positive_part(s.preset.data, {1e-6, 0.5}, def));
  CHECK(in_tau_positive_part(s.preset.data, {0.5, 0.5}, 0.0));
  CHECK(!in_tau_positive_part(s.preset.data, {0.0, 0.5}, 0.0));
}

TEST_CASE("doubling the quadrature changes each term by less than one percent") {
  QuadratureOptions dbl;
  dbl.points_per_axis = 6;
  dbl.boundary_points = 10;
  const Setup a("coupled_smooth", 3, 0.125);
  const Setup b("coupled_smooth", 3, 0.125, FluxMode::Projection, dbl);
  const EstimatorBreakdown ea = upper_bound(a.input()), eb = upper_bound(b.input());
  for (int i = 0; i < 2; ++i) {
    const auto& s = ea.species[static_cast<std::size_t>(i)];
    const auto& t = eb.species[static_cast<std::size_t>(i)];
    for (auto [x, y] : {std::pair{s.resid, t.resid}, {s.robin, t.robin}, {s.flux, t.flux},
                        {s.degenerate, t.degenerate}, {s.neumann, t.neumann}, {s.coupling, t.coupling}}) {
      if (std::max(x, y) < 1e-16) continue;
      CHECK(std::abs(x - y) <= 0.01 * std::max(x, y));
    }
  }
}

TEST_CASE("refinement shrinks the residual, the flux term and the error") {
  double prev_eps = 1e300, prev_flux = 1e300;
  for (double h : {0.25, 0.125, 0.0625}) {
    const Setup s("coupled_smooth", 3, h);
    const double eps = residual_epsilon(s.level.solution->fields_fn(), s.preset.data, s.level.system.forms, s.fine, 3);
    const EstimatorBreakdown e = upper_bound(s.input());
    const double flux = e.species[0].flux + e.species[1].flux;
    CHECK(eps < prev_eps);
    CHECK(flux < prev_flux);
    prev_eps = eps;
    prev_flux = flux;
  }
}

TEST_CASE("lower bound candidates") {
  QuadratureOptions accurate;
  accurate.points_per_axis = 8;
  accurate.boundary_points = 10;
  const Setup s("coupled_smooth", 3, 0.25, FluxMode::Projection, accurate);
  const auto& forms = s.level.system.forms;
  const FieldPair uh = s.level.solution->homogeneous_fn();
  CHECK(lower_bound(s.preset.data, forms, s.fine, uh, {uh}) == 0.0);
  CHECK(lower_bound(s.preset.data, forms, s.fine, uh, {}) == 0.0);
  // the exact minimizer turns the bound into the energy identity
  const FieldPair lift = lift_fields(s.preset.data);
  const FieldPair exact_star = difference(s.preset.exact, lift);
  const double err = energy_error(s.preset.data, forms, s.fine, s.preset.exact, s.level.solution->fields_fn());
  const double lo = lower_bound(s.preset.data, forms, s.fine, uh, {exact_star});
  MESSAGE("2(J(u_h) - J(u)) = " << lo << ", a(e, e) = " << err);
  CHECK(std::abs(lo - err) <= 1e-8 * err);
}

TEST_CASE("upper bound dominates the error at h = 1/8") {
  for (const char* name : {"coupled_smooth", "dirichlet_only", "dirichlet_neumann"}) {
    const Setup s(name, 3, 0.125);
    const double err = energy_error(s.preset.data, s.level.system.forms, s.fine, s.preset.exact, s.level.solution->fields_fn());
    CHECK(err > 0.0);
    CHECK(err <= upper_bound(s.input()).total);
  }
}

TEST_CASE("non-elliptic diffusion is rejected") {
  const Setup s("population", 3, 0.5);
  UpperBoundInput in = s.input();
  in.reference = nullptr;
  in.coupling_mode = CouplingMode::None;
  try {
    upper_bound(in);
    FAIL("expected NonEllipticDiffusion");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonEllipticDiffusion);
  }
}
