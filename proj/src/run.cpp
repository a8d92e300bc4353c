#include "webs/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

namespace webs {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

Discretization discretize(const DomainModel& domain, int order, double h, const QuadratureOptions& quad) {
  const SplineOrder n(order);
  GridSpec grid(h, domain.dim);
  CellMap cells = classify_cells(domain, grid);
  IndexSets sets = build_index_sets(domain, grid, n, cells);
  auto basis = std::make_shared<const SplineBasis>(build_web_basis(domain, grid, n, sets));
  DomainQuadrature q = DomainQuadrature::build(domain, cells, order, quad);
  return Discretization{grid, std::move(cells), std::move(sets), std::move(basis), std::move(q)};
}

DomainQuadrature fine_quadrature(const DomainModel& domain, int order, double h, const QuadratureOptions& quad) {
  const GridSpec grid(0.5 * h, domain.dim);
  return DomainQuadrature::build(domain, classify_cells(domain, grid), order, quad);
}

LevelSolve solve_level(const ProblemPreset& preset, int order, double h, const SolverConfig& solver,
                       const AssemblyOptions& assembly, const QuadratureOptions& quad) {
  Discretization disc = discretize(preset.domain, order, h, quad);
  BlockSystem system = assemble(preset.data, *disc.basis, disc.quad, assembly);
  SolveResult res = solve_block(system, solver);
  auto sol = std::make_shared<const DiscreteSolution>(disc.basis, preset.data.lift, res.x);
  return LevelSolve{std::move(disc), std::move(system), res.report, std::move(sol)};
}

void RunConfig::validate() const {
  if (h_list.empty()) throw Error(ErrorKind::InvalidArgument, "no grid widths given");
  for (double h : h_list)
    if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "grid widths must be positive");
  SplineOrder n(order);
  (void)n;
  if (quadrature_depth < 0) throw Error(ErrorKind::InvalidArgument, "quadrature depth must be non-negative");
  if (threads < 1) throw Error(ErrorKind::InvalidArgument, "thread count must be positive");
  solver.validate();
}

std::vector<LevelResult> run_levels(const RunConfig& config, const ProblemPreset& preset, std::ostream& log,
                                    const std::function<void(const LevelResult&)>& on_row) {
  config.validate();
  std::vector<double> hs = config.h_list;
  std::sort(hs.begin(), hs.end(), std::greater<>());
  QuadratureOptions qopt;
  qopt.depth = config.quadrature_depth;
  AssemblyOptions aopt;
  aopt.negate_second_equation = config.negate_second_equation;
  aopt.threads = config.threads;

  std::vector<LevelResult> rows;
  for (double h : hs) {
    LevelResult row{h, 0, {}, kNaN, kNaN, kNaN, kNaN, std::nullopt};
    const LevelSolve ls = solve_level(preset, config.order, h, config.solver, aopt, qopt);
    row.dofs = ls.system.dofs();
    row.solve = ls.report;
    const auto& forms = ls.system.forms;
    const DiscreteSolution& sol = *ls.solution;
    const DomainQuadrature fine = fine_quadrature(preset.domain, config.order, h, qopt);

    if (config.order >= 3) {
      row.eps_res = residual_epsilon(sol.fields_fn(), preset.data, forms, fine, config.order);
    } else {
      log << "h=" << short_num(h) << ": residual measure needs order >= 3, skipped\n";
    }
    if (preset.has_exact()) row.energy_error = energy_error(preset.data, forms, fine, preset.exact, sol.fields_fn());
    if (std::isfinite(row.energy_error) && row.energy_error < 0.0)
      log << "h=" << short_num(h) << ": energy error is negative (bilinear form not coercive)\n";

    if (config.estimate) {
      try {
        const LevelSolve half = solve_level(preset, config.order, 0.5 * h, config.solver, aopt, qopt);
        std::shared_ptr<const SplineBasis> space;
        if (config.flux == FluxMode::Projection)
          space = std::make_shared<const SplineBasis>(
              build_extended_basis(ls.disc.grid, SplineOrder(config.order), ls.disc.sets));
        const FluxReconstruction flux =
            reconstruct_flux(sol, preset.data, forms, ls.disc.quad, config.flux, space);
        row.lower = lower_bound(preset.data, forms, fine, sol.homogeneous_fn(), {half.solution->homogeneous_fn()});
        UpperBoundInput in;
        in.data = &preset.data;
        in.forms = forms;
        in.quad = &fine;
        in.uh = sol.fields_fn();
        in.flux = &flux;
        in.theta_tilde = config.theta_tilde;
        if (preset.has_exact()) {
          in.reference = preset.exact;
          in.coupling_mode = CouplingMode::Oracle;
        } else {
          in.reference = half.solution->fields_fn();
          in.coupling_mode = CouplingMode::Surrogate;
        }
        row.estimate = upper_bound(in);
        row.upper = row.estimate->total;
      } catch (const Error& e) {
        log << "h=" << short_num(h) << ": estimator failed: " << e.what() << "\n";
      }
    }

    if (config.emit_fields) {
      const std::string path = config.output_dir + "/fields_h" + short_num(h) + ".csv";
      std::ofstream out(path);
      out << "x,y,u1,u2,r1,r2\n";
      const Box& bb = preset.domain.bbox;
      const int nx = preset.domain.dim == 1 ? 201 : 41;
      const int ny = preset.domain.dim == 1 ? 1 : 41;
      for (int a = 0; a < nx; ++a)
        for (int b = 0; b < ny; ++b) {
          const Point x{bb.lo[0] + (bb.hi[0] - bb.lo[0]) * a / (nx - 1),
                        ny == 1 ? 0.0 : bb.lo[1] + (bb.hi[1] - bb.lo[1]) * b / (ny - 1)};
          if (!preset.domain.inside(x)) continue;
          const auto u = sol.fields(x);
          std::array<double, 2> r{kNaN, kNaN};
          if (config.order >= 3) r = strong_residual(preset.data, forms, x, u);
          out << num(x[0]) << ',' << num(x[1]) << ',' << num(u[0].value) << ',' << num(u[1].value) << ','
              << num(r[0]) << ',' << num(r[1]) << '\n';
        }
    }
    if (!row.solve.ok())
      log << "h=" << short_num(h) << ": solver stopped with " << to_string(row.solve.status)
          << ", relative residual " << num(row.solve.final_rel_residual) << "\n";
    if (on_row) on_row(row);
    rows.push_back(std::move(row));
  }
  return rows;
}

int run(const RunConfig& config, std::ostream& log) {
  try {
    config.validate();
    const ProblemPreset preset = make_preset(config.problem);
    std::filesystem::create_directories(config.output_dir);
    if (preset.warn_nonelliptic) log << "warning: diffusion matrix of '" << preset.name << "' is not elliptic\n";

    std::ofstream table(config.output_dir + "/table.csv");
    table << "h,dofs,iterations,eps_res,upper,lower,energy_error\n";
    const auto rows = run_levels(config, preset, log, [&table](const LevelResult& r) {
      table << num(r.h) << ',' << r.dofs << ',' << r.solve.iterations << ',' << num(r.eps_res) << ','
            << num(r.upper) << ',' << num(r.lower) << ',' << num(r.energy_error) << '\n';
      table.flush();
    });

    const EllipticityReport ell = sample_coefficients(preset.data, preset.domain, 100, config.solver.seed);
    std::ofstream summary(config.output_dir + "/summary.csv");
    summary << "key,value\n";
    summary << "problem," << preset.name << '\n';
    summary << "order," << config.order << '\n';
    summary << "negate_second_equation," << (config.negate_second_equation ? 1 : 0) << '\n';
    summary << "flux," << to_string(config.flux) << '\n';
    summary << "warn_nonelliptic," << (preset.warn_nonelliptic ? 1 : 0) << '\n';
    summary << "ellipticity_c1," << num(ell.c1) << '\n';
    summary << "ellipticity_c2," << num(ell.c2) << '\n';
    summary << "min_tau_sampled," << num(ell.min_tau) << '\n';
    bool all_ok = true;
    for (const auto& r : rows) {
      const std::string p = "h" + short_num(r.h) + ".";
      summary << p << "dofs," << r.dofs << '\n';
      summary << p << "iterations," << r.solve.iterations << '\n';
      summary << p << "final_rel_residual," << num(r.solve.final_rel_residual) << '\n';
      summary << p << "method," << to_string(r.solve.method_used) << '\n';
      summary << p << "definiteness," << to_string(r.solve.definiteness_flag) << '\n';
      summary << p << "status," << to_string(r.solve.status) << '\n';
      summary << p << "eps_res," << num(r.eps_res) << '\n';
      summary << p << "energy_error," << num(r.energy_error) << '\n';
      summary << p << "lower," << num(r.lower) << '\n';
      if (r.estimate)
        for (const auto& [k, v] : r.estimate->to_record()) summary << p << k << ',' << v << '\n';
      all_ok = all_ok && r.solve.ok();
    }
    return all_ok ? 0 : 3;
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace webs
