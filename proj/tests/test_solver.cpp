#include <cmath>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "webs/solver.hpp"

using namespace webs;

namespace {

SparseMatrix from_dense(const Eigen::MatrixXd& d) {
  SparseMatrix a = d.sparseView();
  a.makeCompressed();
  return a;
}

SparseMatrix poisson_1d(int size, std::vector<double>& lo, std::vector<double>& di, std::vector<double>& up) {
  std::vector<Eigen::Triplet<double>> t;
  lo.assign(static_cast<std::size_t>(size), -1.0);
  up.assign(static_cast<std::size_t>(size), -1.0);
  di.assign(static_cast<std::size_t>(size), 2.0);
  for (int i = 0; i < size; ++i) {
    t.emplace_back(i, i, 2.0);
    if (i > 0) t.emplace_back(i, i - 1, -1.0);
    if (i + 1 < size) t.emplace_back(i, i + 1, -1.0);
  }
  SparseMatrix a(size, size);
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

}  // namespace

TEST_CASE("identity converges in one step") {
  const SparseMatrix a = from_dense(Eigen::MatrixXd::Identity(7, 7));
  Vector b(7);
  for (int i = 0; i < 7; ++i) b[i] = i + 1.0;
  SolverConfig cfg;
  cfg.ssor_omega = 1.0;
  const SolveResult r = ssor_cg(a, b, cfg);
  CHECK(r.report.iterations == 1);
  CHECK((r.x - b).norm() <= 1e-14);
}

TEST_CASE("2x2 example") {
  Eigen::MatrixXd d(2, 2);
  d << 4, 1, 1, 3;
  Vector b(2);
  b << 1, 2;
  SolverConfig cfg;
  cfg.tol = 1e-12;
  const SolveResult r = ssor_cg(from_dense(d), b, cfg);
  CHECK(r.x[0] == doctest::Approx(1.0 / 11).epsilon(1e-10));
  CHECK(r.x[1] == doctest::Approx(7.0 / 11).epsilon(1e-10));
  CHECK(r.report.method_used == SolverMethod::SSOR_CG);
  CHECK(r.report.definiteness_flag == Definiteness::SPD);
}

TEST_CASE("tridiagonal Poisson against the Thomas algorithm") {
  std::vector<double> lo, di, up;
  const int size = 63;
  const SparseMatrix a = poisson_1d(size, lo, di, up);
  std::vector<double> rhs(static_cast<std::size_t>(size), 1.0 / (64.0 * 64.0));
  const auto oracle = oracle::thomas(lo, di, up, rhs);
  SolverConfig cfg;
  cfg.tol = 1e-13;
  const SolveResult r = ssor_cg(a, Eigen::Map<const Vector>(rhs.data(), size), cfg);
  CHECK(r.report.ok());
  CHECK(r.report.iterations > 1);
  for (int i = 0; i < size; ++i) CHECK(std::abs(r.x[i] - oracle[static_cast<std::size_t>(i)]) <= 1e-8);
}

TEST_CASE("stopping rule and dense agreement on random SPD systems") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 10; ++t) {
    const int size = 5 + 15 * t;
    const Eigen::MatrixXd d = oracle::random_spd(size, 100.0, rng);
    Vector b = Vector::Random(size);
    SolverConfig cfg;
    const SolveResult r = ssor_cg(from_dense(d), b, cfg);
    CHECK(r.report.ok());
    CHECK(r.report.final_rel_residual <= 1e-6);
    CHECK((b - d * r.x).norm() / b.norm() <= 1e-6);
    cfg.tol = 1e-14;
    const SolveResult tight = ssor_cg(from_dense(d), b, cfg);
    CHECK((tight.x - d.llt().solve(b)).norm() <= 1e-8 * (1 + tight.x.norm()));
  }
}

TEST_CASE("A-norm error decreases monotonically") {
  std::mt19937_64 rng(23);
  const Eigen::MatrixXd d = oracle::random_spd(60, 1e3, rng);
  const Vector b = Vector::Random(60);
  const Vector exact = d.llt().solve(b);
  std::vector<double> errs;
  SolverConfig cfg;
  cfg.tol = 1e-12;
  ssor_cg(from_dense(d), b, cfg, [&](int, const Vector& x) {
    const Vector e = x - exact;
    errs.push_back(e.dot(d * e));
  });
  REQUIRE(errs.size() > 2);
  for (std::size_t k = 1; k < errs.size(); ++k) CHECK(errs[k] <= errs[k - 1] * (1 + 1e-10) + 1e-28);
}

TEST_CASE("scaling equivariance and determinism") {
  std::mt19937_64 rng(24);
  const Eigen::MatrixXd d = oracle::random_spd(40, 50.0, rng);
  const Vector b = Vector::Random(40);
  SolverConfig cfg;
  const SolveResult r1 = ssor_cg(from_dense(d), b, cfg);
  const SolveResult r2 = ssor_cg(from_dense(d), b, cfg);
  CHECK(r1.x == r2.x);
  CHECK(r1.report.iterations == r2.report.iterations);
  const SolveResult rs = ssor_cg(from_dense(8.0 * d), 8.0 * b, cfg);
  CHECK((rs.x - r1.x).norm() <= 1e-12 * r1.x.norm());
}

TEST_CASE("precondition failures") {
  Eigen::MatrixXd ns(2, 2);
  ns << 2, 1, 0, 2;
  CHECK_THROWS_AS(ssor_cg(from_dense(ns), Vector::Ones(2), SolverConfig{}), Error);
  Eigen::MatrixXd ind(2, 2);
  ind << 1, 0, 0, -1;
  try {
    ssor_cg(from_dense(ind), Vector::Ones(2), SolverConfig{});
    FAIL("expected NotPositiveDefinite");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPositiveDefinite);
  }
  try {
    ssor_cg(from_dense(ns), Vector::Ones(2), SolverConfig{});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSymmetric);
  }
  SolverConfig bad;
  bad.ssor_omega = 2.0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = SolverConfig{};
  bad.tol = 1.0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("iteration limit returns the best iterate") {
  std::mt19937_64 rng(26);
  const SparseMatrix a = from_dense(oracle::random_spd(100, 1e4, rng));
  SolverConfig cfg;
  cfg.max_iter = 15;
  cfg.tol = 1e-12;
  const Vector b = Vector::Ones(100);
  const SolveResult r = ssor_cg(a, b, cfg);
  CHECK(r.report.status == SolveStatus::MaxIterExceeded);
  CHECK(r.report.iterations == 15);
  CHECK(r.report.final_rel_residual < 1.0);
  CHECK(r.report.final_rel_residual == doctest::Approx((b - a * r.x).norm() / b.norm()).epsilon(1e-10));
}

TEST_CASE("fallbacks for indefinite and nonsymmetric systems") {
  std::mt19937_64 rng(25);
  Eigen::MatrixXd d = oracle::random_spd(30, 10.0, rng);
  Eigen::MatrixXd ind = d;
  ind.bottomRightCorner(15, 15) *= -1.0;
  ind.topRightCorner(15, 15).setZero();
  ind.bottomLeftCorner(15, 15).setZero();
  const Vector b = Vector::Random(30);
  const SolveResult r = solve_linear(from_dense(ind), b, SolverConfig{});
  CHECK(r.report.ok());
  CHECK(r.report.definiteness_flag == Definiteness::Indefinite);
  CHECK(r.report.method_used != SolverMethod::SSOR_CG);
  CHECK((b - ind * r.x).norm() / b.norm() <= 1e-6);

  Eigen::MatrixXd ns = d;
  ns(0, 1) += 0.5;
  const SolveResult q = solve_linear(from_dense(ns), b, SolverConfig{});
  CHECK(q.report.ok());
  CHECK(q.report.method_used == SolverMethod::Normal_CG);
  CHECK((b - ns * q.x).norm() / b.norm() <= 1e-6);
}

TEST_CASE("decoupled block system equals independent solves") {
  std::vector<double> lo, di, up;
  const SparseMatrix p = poisson_1d(20, lo, di, up);
  BlockSystem sys;
  sys.basis_size = 20;
  std::vector<Eigen::Triplet<double>> t;
  for (int k = 0; k < p.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(p, k); it; ++it) {
      t.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
      t.emplace_back(20 + static_cast<int>(it.row()), 20 + static_cast<int>(it.col()), 3.0 * it.value());
    }
  sys.A.resize(40, 40);
  sys.A.setFromTriplets(t.begin(), t.end());
  sys.b = Vector::Ones(40);
  SolverConfig cfg;
  cfg.tol = 1e-13;
  const SolveResult whole = solve_block(sys, cfg);
  const SolveResult one = ssor_cg(p, Vector::Ones(20), cfg);
  const SolveResult two = ssor_cg(SparseMatrix(3.0 * p), Vector::Ones(20), cfg);
  CHECK((whole.x.head(20) - one.x).norm() <= 1e-10);
  CHECK((whole.x.tail(20) - two.x).norm() <= 1e-10);
}
