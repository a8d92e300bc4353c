#include "webs/solver.hpp"

#include <cmath>
#include <random>

#include <Eigen/IterativeLinearSolvers>
#include <unsupported/Eigen/IterativeSolvers>

namespace webs {

const char* to_string(SolverMethod m) {
  switch (m) {
    case SolverMethod::SSOR_CG: return "SSOR_CG";
    case SolverMethod::MINRES_like: return "MINRES_like";
    case SolverMethod::Normal_CG: return "Normal_CG";
  }
  return "?";
}

const char* to_string(Definiteness d) {
  switch (d) {
    case Definiteness::SPD: return "SPD";
    case Definiteness::Indefinite: return "Indefinite";
    case Definiteness::Unknown: return "Unknown";
  }
  return "?";
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::MaxIterExceeded: return "MaxIterExceeded";
    case SolveStatus::SingularSystem: return "SingularSystem";
  }
  return "?";
}

void SolverConfig::validate() const {
  if (!(tol > 0.0 && tol < 1.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must lie in (0, 1)");
  if (!(ssor_omega > 0.0 && ssor_omega < 2.0))
    throw Error(ErrorKind::InvalidArgument, "SSOR parameter must lie in (0, 2)");
  if (max_iter < 0) throw Error(ErrorKind::InvalidArgument, "iteration limit must be positive");
}

namespace {

double relative_residual(const SparseMatrix& a, const Vector& b, const Vector& x) {
  const double nb = b.norm();
  const double nr = (b - a * x).norm();
  return nb == 0.0 ? nr : nr / nb;
}

constexpr double kSymmetryTol = 1e-10;

}  // namespace

bool probe_positive_definite(const SparseMatrix& a, std::uint64_t seed, int probes) {
  for (int k = 0; k < a.rows(); ++k)
    if (!(a.coeff(k, k) > 0.0)) return false;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Vector v(a.rows());
  for (int p = 0; p < probes; ++p) {
    for (int k = 0; k < v.size(); ++k) v[k] = nd(rng);
    if (!(v.dot(a * v) > 0.0)) return false;
  }
  return true;
}

void ssor_apply(const SparseMatrix& a, double omega, const Vector& r, Vector& z) {
  const int n = static_cast<int>(a.rows());
  const int* outer = a.outerIndexPtr();
  const int* inner = a.innerIndexPtr();
  const double* val = a.valuePtr();
  Vector d(n);
  z.resize(n);
  // forward: (D/w + L) y = r
  for (int i = 0; i < n; ++i) {
    double s = r[i];
    double dii = 0.0;
    for (int p = outer[i]; p < outer[i + 1]; ++p) {
      const int j = inner[p];
      if (j < i) s -= val[p] * z[j];
      else if (j == i) dii = val[p];
    }
    d[i] = dii;
    z[i] = s * omega / dii;
  }
  // y <- ((2 - w) / w) D y
  for (int i = 0; i < n; ++i) z[i] *= (2.0 - omega) / omega * d[i];
  // backward: (D/w + U) z = y, U = L^T for symmetric A
  for (int i = n - 1; i >= 0; --i) {
    double s = z[i];
    for (int p = outer[i]; p < outer[i + 1]; ++p) {
      const int j = inner[p];
      if (j > i) s -= val[p] * z[j];
    }
    z[i] = s * omega / d[i];
  }
}

SolveResult ssor_cg(const SparseMatrix& a, const Vector& b, const SolverConfig& config,
                    const IterationObserver& observer) {
  config.validate();
  if (a.rows() != a.cols() || a.rows() != b.size())
    throw Error(ErrorKind::DimensionMismatch, "matrix and right-hand side sizes differ");
  if (relative_asymmetry(a) > kSymmetryTol) throw Error(ErrorKind::NotSymmetric, "matrix is not symmetric");
  if (!probe_positive_definite(a, config.seed))
    throw Error(ErrorKind::NotPositiveDefinite, "SPD probe failed");

  SolveResult res;
  res.report.method_used = SolverMethod::SSOR_CG;
  res.report.definiteness_flag = Definiteness::SPD;
  const int n = static_cast<int>(a.rows());
  res.x = Vector::Zero(n);
  const double nb = b.norm();
  if (nb == 0.0) return res;

  const int limit = config.iteration_limit(n);
  Vector r = b, z, p, q;
  ssor_apply(a, config.ssor_omega, r, z);
  p = z;
  double rz = r.dot(z);
  Vector best = res.x;
  double best_res = 1.0;
  int it = 0;
  while (it < limit) {
    q = a * p;
    const double pq = p.dot(q);
    if (!(pq > 0.0)) throw Error(ErrorKind::NotPositiveDefinite, "CG breakdown: p^T A p <= 0");
    const double alpha = rz / pq;
    res.x += alpha * p;
    r -= alpha * q;
    ++it;
    if (observer) observer(it, res.x);
    const double rel = r.norm() / nb;
    if (rel < best_res) {
      best_res = rel;
      best = res.x;
    }
    if (rel <= config.tol) {
      const double true_rel = relative_residual(a, b, res.x);
      if (true_rel <= config.tol) {
        res.report.iterations = it;
        res.report.final_rel_residual = true_rel;
        return res;
      }
      r = b - a * res.x;  // residual drifted; restart from the true one
    }
    ssor_apply(a, config.ssor_omega, r, z);
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  res.x = best;
  res.report.iterations = it;
  res.report.final_rel_residual = relative_residual(a, b, res.x);
  res.report.status =
      res.report.final_rel_residual <= config.tol ? SolveStatus::Converged : SolveStatus::MaxIterExceeded;
  return res;
}

namespace {

/// Diagonal preconditioner with |a_kk| (zero entries replaced by one), which
/// stays positive definite for indefinite matrices.
class AbsDiagonalPreconditioner {
 public:
  using StorageIndex = int;
  enum { ColsAtCompileTime = Eigen::Dynamic, MaxColsAtCompileTime = Eigen::Dynamic };

  AbsDiagonalPreconditioner() = default;
  template <class M>
  explicit AbsDiagonalPreconditioner(const M& m) {
    compute(m);
  }
  template <class M>
  AbsDiagonalPreconditioner& analyzePattern(const M&) {
    return *this;
  }
  template <class M>
  AbsDiagonalPreconditioner& factorize(const M& m) {
    inv_.resize(m.cols());
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      const double d = std::abs(m.coeff(k, k));
      inv_[k] = d > 0.0 ? 1.0 / d : 1.0;
    }
    return *this;
  }
  template <class M>
  AbsDiagonalPreconditioner& compute(const M& m) {
    return factorize(m);
  }
  template <class Rhs>
  Vector solve(const Rhs& b) const {
    return inv_.cwiseProduct(b);
  }
  Eigen::ComputationInfo info() const { return Eigen::Success; }

 private:
  Vector inv_;
};

SolveResult minres(const SparseMatrix& a, const Vector& b, const SolverConfig& config) {
  SolveResult res;
  res.report.method_used = SolverMethod::MINRES_like;
  res.report.definiteness_flag = Definiteness::Indefinite;
  Eigen::MINRES<SparseMatrix, Eigen::Lower | Eigen::Upper, AbsDiagonalPreconditioner> solver;
  solver.setMaxIterations(config.iteration_limit(static_cast<int>(a.rows())));
  solver.setTolerance(config.tol);
  solver.compute(a);
  res.x = solver.solve(b);
  res.report.iterations = static_cast<int>(solver.iterations());
  res.report.final_rel_residual = relative_residual(a, b, res.x);
  res.report.status =
      res.report.final_rel_residual <= config.tol ? SolveStatus::Converged : SolveStatus::MaxIterExceeded;
  return res;
}

SolveResult normal_cg(const SparseMatrix& a, const Vector& b, const SolverConfig& config, Definiteness flag) {
  SolveResult res;
  res.report.method_used = SolverMethod::Normal_CG;
  res.report.definiteness_flag = flag;
  const int limit = config.iteration_limit(static_cast<int>(a.rows()));
  Eigen::LeastSquaresConjugateGradient<SparseMatrix> solver;
  solver.compute(a);
  res.x = Vector::Zero(a.cols());
  // The inner stopping rule measures the normal-equation residual; tighten
  // it until the residual of the system itself meets the tolerance.
  double inner_tol = config.tol;
  int used = 0;
  while (used < limit) {
    solver.setTolerance(inner_tol);
    solver.setMaxIterations(limit - used);
    res.x = solver.solveWithGuess(b, res.x);
    used += static_cast<int>(solver.iterations());
    res.report.final_rel_residual = relative_residual(a, b, res.x);
    if (res.report.final_rel_residual <= config.tol) break;
    if (inner_tol < 1e-16) {
      res.report.status = SolveStatus::SingularSystem;
      res.report.iterations = used;
      return res;
    }
    inner_tol *= 0.01;
  }
  res.report.iterations = used;
  res.report.status =
      res.report.final_rel_residual <= config.tol ? SolveStatus::Converged : SolveStatus::MaxIterExceeded;
  return res;
}

}  // namespace

SolveResult solve_linear(const SparseMatrix& a, const Vector& b, const SolverConfig& config) {
  config.validate();
  if (a.rows() != a.cols() || a.rows() != b.size())
    throw Error(ErrorKind::DimensionMismatch, "matrix and right-hand side sizes differ");
  const bool symmetric = relative_asymmetry(a) <= kSymmetryTol;
  if (!symmetric) return normal_cg(a, b, config, Definiteness::Unknown);
  if (config.method == SolverMethod::Normal_CG) return normal_cg(a, b, config, Definiteness::Unknown);
  if (config.method == SolverMethod::SSOR_CG && probe_positive_definite(a, config.seed)) {
    try {
      return ssor_cg(a, b, config);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotPositiveDefinite) throw;
    }
  }
  SolveResult res = minres(a, b, config);
  if (res.report.ok()) return res;
  SolveResult fallback = normal_cg(a, b, config, Definiteness::Indefinite);
  fallback.report.iterations += res.report.iterations;
  return fallback;
}

SolveResult solve_block(const BlockSystem& system, const SolverConfig& config) {
  return solve_linear(system.A, system.b, config);
}

}  // namespace webs
