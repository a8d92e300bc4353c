#pragma once

// Independent reference computations shared by unit and acceptance tests.

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "webs/grid.hpp"
#include "webs/web_basis.hpp"

namespace oracle {

// Value at j of the degree n-1 tensor polynomial interpolating unit data at
// node alpha + o, found by solving the Vandermonde system directly.
inline std::vector<double> extrapolation_row(const webs::Index& j, const webs::Index& alpha, int n, int dim) {
  const int size = dim == 1 ? n : n * n;
  Eigen::MatrixXd V(size, size);
  Eigen::VectorXd mono(size);
  std::vector<webs::Index> nodes;
  webs::for_each_offset(n, dim, [&](const webs::Index& o) { nodes.push_back({alpha[0] + o[0], alpha[1] + o[1]}); });
  auto monomials = [&](const webs::Index& k, auto&& put) {
    int c = 0;
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < (dim == 1 ? 1 : n); ++q) put(c++, std::pow(k[0], p) * std::pow(k[1], q));
  };
  for (int r = 0; r < size; ++r) monomials(nodes[static_cast<std::size_t>(r)], [&](int c, double v) { V(r, c) = v; });
  monomials(j, [&](int c, double v) { mono[c] = v; });
  const Eigen::VectorXd e = V.transpose().fullPivLu().solve(mono);
  return {e.data(), e.data() + size};
}

// Least-squares residual of fitting w * p by the WEB basis at points of
// interior cells, relative to the size of w * p.
template <class Poly>
double weighted_reproduction_residual(const webs::SplineBasis& basis, const webs::DomainModel& domain,
                                      const webs::GridSpec& grid, const webs::CellMap& cells, Poly p) {
  std::vector<webs::Point> pts;
  for (const webs::Index& l : cells.cells(webs::CellClass::Interior)) {
    const webs::Box b = grid.cell_box(l);
    for (double s : {0.2, 0.7})
      for (double t : {0.3, 0.8}) pts.push_back({b.lo[0] + s * grid.h(), b.lo[1] + t * grid.h()});
  }
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(pts.size()), basis.size());
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(pts.size()));
  std::vector<webs::SplineBasis::LocalValue> vals;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    basis.local(pts[k], vals);
    for (const auto& v : vals) M(static_cast<Eigen::Index>(k), v.r) = v.jet.value;
    rhs[static_cast<Eigen::Index>(k)] = domain.weight.value(pts[k]) * p(pts[k]);
  }
  const Eigen::VectorXd c = M.colPivHouseholderQr().solve(rhs);
  return (M * c - rhs).norm() / rhs.norm();
}

// Random symmetric positive definite matrix with eigenvalues in [1, cond].
inline Eigen::MatrixXd random_spd(int size, double cond, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd X(size, size);
  for (int a = 0; a < size; ++a)
    for (int b = 0; b < size; ++b) X(a, b) = g(rng);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
  const Eigen::MatrixXd Q = qr.householderQ();
  Eigen::VectorXd d(size);
  for (int a = 0; a < size; ++a) d[a] = std::pow(cond, size == 1 ? 0.0 : static_cast<double>(a) / (size - 1));
  return Q * d.asDiagonal() * Q.transpose();
}

// Thomas algorithm for a tridiagonal system.
inline std::vector<double> thomas(std::vector<double> lower, std::vector<double> diag, std::vector<double> upper,
                                  std::vector<double> rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double m = lower[i] / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  std::vector<double> x(n);
  x[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = (rhs[i] - upper[i] * x[i + 1]) / diag[i];
  return x;
}

// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::log(x[i]), b = std::log(y[i]);
    sx += a;
    sy += b;
    sxx += a * a;
    sxy += a * b;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracle
