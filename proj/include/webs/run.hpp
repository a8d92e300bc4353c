#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "webs/assembly.hpp"
#include "webs/estimator.hpp"
#include "webs/grid.hpp"
#include "webs/presets.hpp"
#include "webs/quadrature.hpp"
#include "webs/solver.hpp"
#include "webs/web_basis.hpp"

namespace webs {

/// Grid, index sets, WEB basis and quadrature for one grid width.
struct Discretization {
  GridSpec grid;
  CellMap cells;
  IndexSets sets;
  std::shared_ptr<const SplineBasis> basis;
  DomainQuadrature quad;
};

Discretization discretize(const DomainModel& domain, int order, double h, const QuadratureOptions& quad = {});

/// Quadrature on the grid h/2 (used for error measures).
DomainQuadrature fine_quadrature(const DomainModel& domain, int order, double h, const QuadratureOptions& quad = {});

struct LevelSolve {
  Discretization disc;
  BlockSystem system;
  SolveReport report;
  std::shared_ptr<const DiscreteSolution> solution;
};

LevelSolve solve_level(const ProblemPreset& preset, int order, double h, const SolverConfig& solver,
                       const AssemblyOptions& assembly, const QuadratureOptions& quad = {});

struct RunConfig {
  std::string problem;
  int order = 3;
  std::vector<double> h_list;
  SolverConfig solver;
  bool estimate = false;
  double theta_tilde = 0.0;  // <= 0: default
  FluxMode flux = FluxMode::Projection;
  std::string output_dir = ".";
  bool emit_fields = false;
  int quadrature_depth = 4;
  bool negate_second_equation = false;
  int threads = 1;

  /// Throws InvalidArgument.
  void validate() const;
};

struct LevelResult {
  double h = 0.0;
  int dofs = 0;
  SolveReport solve;
  double eps_res;
  double upper;
  double lower;
  double energy_error;
  std::optional<EstimatorBreakdown> estimate;
};

/// Runs every grid width (descending h) and returns the rows. Estimator and
/// residual failures are reported on `log` and leave NaN in the row.
/// `on_row` sees each row as soon as it is complete.
std::vector<LevelResult> run_levels(const RunConfig& config, const ProblemPreset& preset, std::ostream& log,
                                    const std::function<void(const LevelResult&)>& on_row = {});

/// Full CLI run: writes table.csv, summary.csv and optional field files to
/// config.output_dir. Returns the process exit status.
int run(const RunConfig& config, std::ostream& log);

}  // namespace webs
