#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <doctest.h>

#include "webs/presets.hpp"
#include "webs/web_basis.hpp"
#include "webs/weight.hpp"

using namespace webs;

TEST_CASE("weights") {
  const WeightFunction om = annulus_weight();
  CHECK(std::abs(om.value({1.0, 0.0})) <= 1e-15);
  CHECK(om.value({1.5, 0.0}) == doctest::Approx(2.1875));
  const WeightFunction w = weight_rfunction({BoundaryCurve::segment({0.0, 1.0}, {0.0, 0.0})});
  CHECK(w.value({0.3, 0.7}) == doctest::Approx(0.3));
  CHECK_THROWS_AS(weight_rfunction({BoundaryCurve::implicit([](const Point& x) { return x[0]; })}), Error);
}

TEST_CASE("weight gradients and Hessians against differences") {
  const auto q = quarter_disk_pieces();
  std::vector<WeightFunction> ws{weight_rfunction({q.bottom, q.arc, q.left}), annulus_weight(),
                                 weight_rfunction({q.left})};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.05, 0.7);
  const double s = 1e-5;
  for (const auto& w : ws)
    for (int t = 0; t < 20; ++t) {
      const Point x{u(rng), u(rng)};
      const Jet j = w(x);
      const double dx = (w.value({x[0] + s, x[1]}) - w.value({x[0] - s, x[1]})) / (2 * s);
      const double dy = (w.value({x[0], x[1] + s}) - w.value({x[0], x[1] - s})) / (2 * s);
      CHECK(std::abs(j.grad[0] - dx) <= 1e-6);
      CHECK(std::abs(j.grad[1] - dy) <= 1e-6);
      const Vec gp = w.gradient({x[0] + s, x[1]}), gm = w.gradient({x[0] - s, x[1]});
      CHECK(std::abs(j.hess.xx - (gp[0] - gm[0]) / (2 * s)) <= 1e-5);
      CHECK(std::abs(j.hess.xy - (gp[1] - gm[1]) / (2 * s)) <= 1e-5);
    }
}

TEST_CASE("dirichlet weight vanishes on its pieces and is positive inside") {
  const auto q = quarter_disk_pieces();
  const WeightFunction w = weight_rfunction({q.bottom, q.arc, q.left});
  for (int k = 0; k <= 20; ++k) {
    const double t = k / 20.0;
    CHECK(std::abs(w.value(q.bottom.point(t))) <= 1e-14);
    CHECK(std::abs(w.value(q.arc.point(t))) <= 1e-14);
    CHECK(std::abs(w.value(q.left.point(t))) <= 1e-14);
  }
  CHECK(w.value({0.3, 0.3}) > 0.0);
}

TEST_CASE("closest index array") {
  const std::vector<Index> inner{{3, 0}, {4, 0}, {5, 0}, {6, 0}};
  // I(5) with 5 outside an inner set {3,4}
  CHECK(closest_index_array({5, 0}, {{3, 0}, {4, 0}}, SplineOrder(2), 1) == Index{3, 0});
  CHECK(closest_index_array({8, 0}, inner, SplineOrder(2), 1) == Index{5, 0});
  CHECK(closest_index_array({1, 0}, inner, SplineOrder(2), 1) == Index{3, 0});
  CHECK_THROWS_AS(closest_index_array({1, 0}, {{3, 0}}, SplineOrder(2), 1), Error);
}

TEST_CASE("extension coefficients") {
  const auto e = extension_coeffs({5, 0}, {3, 0}, SplineOrder(2), 1);
  REQUIRE(e.size() == 2);
  CHECK(e[0].second == doctest::Approx(-1.0));
  CHECK(e[1].second == doctest::Approx(2.0));
  const auto node = extension_coeffs({4, 0}, {3, 0}, SplineOrder(3), 1);
  CHECK(node[0].second == doctest::Approx(0.0));
  CHECK(node[1].second == doctest::Approx(1.0));
  CHECK(node[2].second == doctest::Approx(0.0));
}

TEST_CASE("extension coefficients agree with a polynomial fit") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> off(-4, 6);
  for (int n = 2; n <= 3; ++n) {
    for (int t = 0; t < 20; ++t) {
      const Index alpha{off(rng), off(rng)};
      const Index j{off(rng), off(rng)};
      const auto e = extension_coeffs(j, alpha, SplineOrder(n), 2);
      // oracle: e_i = value at j of the degree n-1 tensor polynomial with unit data at node i
      Eigen::MatrixXd V(n * n, n * n);
      int row = 0;
      for_each_offset(n, 2, [&](const Index& o) {
        int col = 0;
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q) V(row, col++) = std::pow(alpha[0] + o[0], p) * std::pow(alpha[1] + o[1], q);
        ++row;
      });
      Eigen::VectorXd mono(n * n);
      int col = 0;
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) mono[col++] = std::pow(j[0], p) * std::pow(j[1], q);
      const Eigen::VectorXd oracle = V.transpose().fullPivLu().solve(mono);
      for (int k = 0; k < n * n; ++k)
        CHECK(std::abs(e[static_cast<std::size_t>(k)].second - oracle[k]) <= 1e-9 * std::max(1.0, std::abs(oracle[k])));
    }
  }
}

TEST_CASE("WEB basis on the quarter disk") {
  const auto preset = preset_manufactured("dirichlet_only");
  const DomainModel& d = preset.domain;
  const GridSpec grid(0.125, 2);
  const CellMap cells = classify_cells(d, grid);
  const IndexSets sets = build_index_sets(d, grid, SplineOrder(3), cells);
  const SplineBasis basis = build_web_basis(d, grid, SplineOrder(3), sets);
  CHECK(basis.size() == static_cast<int>(sets.inner.size()));

  SUBCASE("normalized at x_i and locality") {
    for (int r = 0; r < basis.size(); ++r) {
      const auto& f = basis.function(r);
      CHECK(f.scale * d.weight.value(f.center) == doctest::Approx(1.0));
      for (const auto& [k, c] : f.terms) {
        CHECK(std::abs(k[0] - f.i[0]) <= 2 * 3);
        CHECK(std::abs(k[1] - f.i[1]) <= 2 * 3);
      }
    }
  }

  SUBCASE("each outer index feeds at most n^m functions") {
    std::map<Index, int> count;
    for (int r = 0; r < basis.size(); ++r)
      for (const auto& [k, c] : basis.function(r).terms)
        if (!sets.is_inner(k)) ++count[k];
    for (const auto& [k, c] : count) CHECK(c <= 9);
  }

  SUBCASE("local evaluation matches direct evaluation") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<SplineBasis::LocalValue> vals;
    for (int t = 0; t < 30; ++t) {
      const Point x{u(rng), u(rng)};
      basis.local(x, vals);
      for (const auto& lv : vals) {
        const Jet j = basis.eval(lv.r, x);
        CHECK(lv.jet.value == doctest::Approx(j.value).epsilon(1e-12));
        CHECK(lv.jet.grad[0] == doctest::Approx(j.grad[0]).epsilon(1e-12));
        CHECK(lv.jet.hess.xy == doctest::Approx(j.hess.xy).epsilon(1e-12));
      }
    }
  }

  SUBCASE("gradient against differences") {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> u(0.05, 0.65);
    const double s = 1e-5;
    for (int t = 0; t < 20; ++t) {
      const Point x{u(rng), u(rng)};
      const int r = t % basis.size();
      const Vec g = eval_web_gradient(basis, r, x);
      CHECK(std::abs(g[0] - (eval_web(basis, r, {x[0] + s, x[1]}) - eval_web(basis, r, {x[0] - s, x[1]})) / (2 * s)) <= 1e-6);
      CHECK(std::abs(g[1] - (eval_web(basis, r, {x[0], x[1] + s}) - eval_web(basis, r, {x[0], x[1] - s})) / (2 * s)) <= 1e-6);
    }
  }

  SUBCASE("vanishes on the Dirichlet boundary") {
    const auto q = quarter_disk_pieces();
    for (int k = 0; k < 100; ++k) {
      const double t = (k + 0.5) / 100;
      const BoundaryCurve& c = k % 3 == 0 ? q.bottom : (k % 3 == 1 ? q.arc : q.left);
      const Point x = c.point(t);
      for (int r = 0; r < basis.size(); ++r) CHECK(std::abs(eval_web(basis, r, x)) <= 1e-12);
    }
  }
}

TEST_CASE("no outer splines and unit weight give plain B-splines") {
  const auto p = preset_manufactured("poisson1d");
  DomainModel d = p.domain;
  d.weight = WeightFunction();
  const GridSpec grid(0.25, 1);
  const IndexSets sets = build_index_sets(d, grid, SplineOrder(2), classify_cells(d, grid));
  REQUIRE(sets.outer.empty());
  const SplineBasis basis = build_web_basis(d, grid, SplineOrder(2), sets);
  for (int r = 0; r < basis.size(); ++r)
    for (double x : {0.1, 0.33, 0.5, 0.9})
      CHECK(eval_web(basis, r, {x, 0.0}) == doctest::Approx(eval_tensor(SplineOrder(2), grid, basis.function(r).i, {x, 0.0})));
}

TEST_CASE("two-scale refinement reproduces the coarse spline") {
  const GridSpec coarse(0.25, 2), fine(0.125, 2);
  std::vector<std::pair<Index, double>> c{{{0, 0}, 1.0}, {{1, 2}, -0.5}, {{-1, 1}, 2.0}};
  for (int n = 2; n <= 4; ++n) {
    const auto f = refine_coefficients(c, SplineOrder(n), 2);
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> u(-0.3, 1.2);
    for (int t = 0; t < 30; ++t) {
      const Point x{u(rng), u(rng)};
      double a = 0.0, b = 0.0;
      for (const auto& [k, v] : c) a += v * eval_tensor(SplineOrder(n), coarse, k, x);
      for (const auto& [k, v] : f) b += v * eval_tensor(SplineOrder(n), fine, k, x);
      CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
  }
}
