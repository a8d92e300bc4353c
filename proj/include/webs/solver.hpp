#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "webs/assembly.hpp"
#include "webs/sparse.hpp"

namespace webs {

enum class SolverMethod { SSOR_CG, MINRES_like, Normal_CG };
enum class Definiteness { SPD, Indefinite, Unknown };
enum class SolveStatus { Converged, MaxIterExceeded, SingularSystem };

const char* to_string(SolverMethod m);
const char* to_string(Definiteness d);
const char* to_string(SolveStatus s);

struct SolverConfig {
  double tol = 1e-6;
  /// 0 means 10 * dofs.
  int max_iter = 0;
  double ssor_omega = 1.2;
  /// First choice for symmetric systems that fail the SPD probe.
  SolverMethod method = SolverMethod::SSOR_CG;
  std::uint64_t seed = 0;

  /// Throws InvalidArgument unless 0 < tol < 1 and 0 < ssor_omega < 2.
  void validate() const;
  int iteration_limit(int dofs) const { return max_iter > 0 ? max_iter : 10 * dofs; }
};

struct SolveReport {
  int iterations = 0;
  double final_rel_residual = 0.0;
  SolverMethod method_used = SolverMethod::SSOR_CG;
  Definiteness definiteness_flag = Definiteness::Unknown;
  SolveStatus status = SolveStatus::Converged;
  bool ok() const { return status == SolveStatus::Converged; }
};

struct SolveResult {
  Vector x;
  SolveReport report;
};

/// Called after every CG step with the iteration count and current iterate.
using IterationObserver = std::function<void(int, const Vector&)>;

/// Positive diagonal plus `probes` seeded Rayleigh quotients.
bool probe_positive_definite(const SparseMatrix& a, std::uint64_t seed, int probes = 5);

/// z = M^{-1} r for M = (D/w + L) (w/(2-w)) D^{-1} (D/w + L)^T.
void ssor_apply(const SparseMatrix& a, double omega, const Vector& r, Vector& z);

/// SSOR preconditioned CG from x = 0. Throws NotSymmetric or
/// NotPositiveDefinite; running out of iterations is reported in the status
/// together with the best iterate seen.
SolveResult ssor_cg(const SparseMatrix& a, const Vector& b, const SolverConfig& config,
                    const IterationObserver& observer = {});

/// Symmetric systems passing the SPD probe go to SSOR-CG; other symmetric
/// systems to MINRES with |diag| preconditioning, then CG on the normal
/// equations; nonsymmetric systems straight to the normal equations.
SolveResult solve_linear(const SparseMatrix& a, const Vector& b, const SolverConfig& config);

SolveResult solve_block(const BlockSystem& system, const SolverConfig& config);

}  // namespace webs
