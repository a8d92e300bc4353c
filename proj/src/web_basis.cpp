#include "webs/web_basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <tuple>

namespace webs {

InnerArrayFinder::InnerArrayFinder(const std::vector<Index>& inner, SplineOrder n, int dim) : n_(n), dim_(dim) {
  const std::set<Index> members(inner.begin(), inner.end());
  for (const Index& alpha : inner) {
    bool full = true;
    for_each_offset(n.value(), dim, [&](const Index& o) {
      if (full && !members.count(Index{alpha[0] + o[0], alpha[1] + o[1]})) full = false;
    });
    if (full) bases_.push_back(alpha);
  }
  std::sort(bases_.begin(), bases_.end());
}

Index InnerArrayFinder::closest(const Index& j) const {
  if (bases_.empty()) throw Error(ErrorKind::NoInnerArray, "inner indices contain no full n^m block");
  const int n = n_.value();
  auto key = [&](const Index& alpha) {
    int cheb = 0, l1 = 0;
    for (int mu = 0; mu < dim_; ++mu) {
      const int d = std::max({0, alpha[mu] - j[mu], j[mu] - (alpha[mu] + n - 1)});
      cheb = std::max(cheb, d);
      l1 += d;
    }
    return std::make_tuple(cheb, l1, alpha);
  };
  Index best = bases_.front();
  auto best_key = key(best);
  for (const Index& alpha : bases_) {
    const auto k = key(alpha);
    if (k < best_key) {
      best_key = k;
      best = alpha;
    }
  }
  return best;
}

Index closest_index_array(const Index& j, const std::vector<Index>& inner, SplineOrder n, int dim) {
  return InnerArrayFinder(inner, n, dim).closest(j);
}

std::vector<std::pair<Index, double>> extension_coeffs(const Index& j, const Index& alpha, SplineOrder n, int dim) {
  const int order = n.value();
  // 1-D Lagrange cardinal values at j over nodes alpha..alpha+n-1
  double row[2][16];
  for (int mu = 0; mu < 2; ++mu) {
    for (int a = 0; a < order; ++a) {
      if (mu >= dim) {
        row[mu][a] = 1.0;
        continue;
      }
      const int i = alpha[mu] + a;
      double e = 1.0;
      for (int l = alpha[mu]; l < alpha[mu] + order; ++l) {
        if (l == i) continue;
        e *= static_cast<double>(j[mu] - l) / static_cast<double>(i - l);
      }
      row[mu][a] = e;
    }
  }
  std::vector<std::pair<Index, double>> out;
  for_each_offset(order, dim, [&](const Index& o) {
    const double e = dim == 1 ? row[0][o[0]] : row[0][o[0]] * row[1][o[1]];
    out.emplace_back(Index{alpha[0] + o[0], dim == 1 ? 0 : alpha[1] + o[1]}, e);
  });
  return out;
}

SplineBasis::SplineBasis(SplineOrder n, GridSpec grid, WeightFunction weight, std::vector<Function> functions)
    : bsplines_(n, grid), weight_(std::move(weight)), functions_(std::move(functions)) {
  if (functions_.empty()) throw Error(ErrorKind::EmptyBasis, "basis has no functions");
  k_lo_ = {std::numeric_limits<int>::max(), std::numeric_limits<int>::max()};
  k_hi_ = {std::numeric_limits<int>::min(), std::numeric_limits<int>::min()};
  for (const auto& f : functions_) {
    for (const auto& [k, c] : f.terms) {
      for (int mu = 0; mu < 2; ++mu) {
        k_lo_[mu] = std::min(k_lo_[mu], k[mu]);
        k_hi_[mu] = std::max(k_hi_[mu], k[mu]);
      }
    }
  }
  const std::size_t rows = static_cast<std::size_t>(k_hi_[0] - k_lo_[0] + 1);
  const std::size_t cols = static_cast<std::size_t>(k_hi_[1] - k_lo_[1] + 1);
  table_.assign(rows * cols, {});
  for (int r = 0; r < size(); ++r) {
    for (const auto& [k, c] : functions_[static_cast<std::size_t>(r)].terms) {
      const std::size_t off = static_cast<std::size_t>(k[0] - k_lo_[0]) * cols + static_cast<std::size_t>(k[1] - k_lo_[1]);
      table_[off].emplace_back(r, c);
    }
  }
}

const std::vector<std::pair<int, double>>* SplineBasis::expansion(const Index& k) const {
  for (int mu = 0; mu < 2; ++mu)
    if (k[mu] < k_lo_[mu] || k[mu] > k_hi_[mu]) return nullptr;
  const std::size_t cols = static_cast<std::size_t>(k_hi_[1] - k_lo_[1] + 1);
  const std::size_t off = static_cast<std::size_t>(k[0] - k_lo_[0]) * cols + static_cast<std::size_t>(k[1] - k_lo_[1]);
  return &table_[off];
}

void SplineBasis::local_splines(const Point& x, std::vector<LocalValue>& out) const {
  out.clear();
  thread_local std::vector<UniformBSplineBasis::LocalValue> splines;
  bsplines_.local(x, splines);
  for (const auto& lv : splines) {
    if (lv.jet.value == 0.0 && lv.jet.grad[0] == 0.0 && lv.jet.grad[1] == 0.0 && lv.jet.hess.xx == 0.0 &&
        lv.jet.hess.yy == 0.0)
      continue;
    const auto* ex = expansion(lv.k);
    if (!ex) continue;
    for (const auto& [r, c] : *ex) {
      auto it = std::find_if(out.begin(), out.end(), [r = r](const LocalValue& v) { return v.r == r; });
      if (it == out.end()) {
        out.push_back({r, Jet{}});
        it = out.end() - 1;
      }
      Jet& s = it->jet;
      s.value += c * lv.jet.value;
      s.grad[0] += c * lv.jet.grad[0];
      s.grad[1] += c * lv.jet.grad[1];
      s.hess.xx += c * lv.jet.hess.xx;
      s.hess.xy += c * lv.jet.hess.xy;
      s.hess.yy += c * lv.jet.hess.yy;
    }
  }
}

namespace {

// scale * w * s with product rule
Jet weighted(double scale, const Jet& w, const Jet& s) {
  Jet j;
  j.value = scale * w.value * s.value;
  j.grad = {scale * (w.grad[0] * s.value + w.value * s.grad[0]),
            scale * (w.grad[1] * s.value + w.value * s.grad[1])};
  j.hess.xx = scale * (w.hess.xx * s.value + 2.0 * w.grad[0] * s.grad[0] + w.value * s.hess.xx);
  j.hess.xy = scale * (w.hess.xy * s.value + w.grad[0] * s.grad[1] + w.grad[1] * s.grad[0] + w.value * s.hess.xy);
  j.hess.yy = scale * (w.hess.yy * s.value + 2.0 * w.grad[1] * s.grad[1] + w.value * s.hess.yy);
  return j;
}

}  // namespace

void SplineBasis::local(const Point& x, std::vector<LocalValue>& out) const {
  local_splines(x, out);
  if (out.empty()) return;
  const Jet w = weight_(x);
  for (auto& v : out) v.jet = weighted(functions_[static_cast<std::size_t>(v.r)].scale, w, v.jet);
}

Jet SplineBasis::eval(int r, const Point& x) const {
  const auto& f = function(r);
  Jet s;
  for (const auto& [k, c] : f.terms) {
    s.value += c * bsplines_.value(k, x);
    const Vec g = bsplines_.gradient(k, x);
    s.grad[0] += c * g[0];
    s.grad[1] += c * g[1];
    const SymMat2 hm = bsplines_.hessian(k, x);
    s.hess.xx += c * hm.xx;
    s.hess.xy += c * hm.xy;
    s.hess.yy += c * hm.yy;
  }
  return weighted(f.scale, weight_(x), s);
}

std::vector<std::pair<Index, double>> SplineBasis::bspline_coefficients(const std::vector<double>& coeffs) const {
  if (static_cast<int>(coeffs.size()) != size())
    throw Error(ErrorKind::DimensionMismatch, "coefficient vector does not match basis size");
  std::map<Index, double> d;
  for (int r = 0; r < size(); ++r) {
    const auto& f = function(r);
    for (const auto& [k, c] : f.terms) d[k] += coeffs[static_cast<std::size_t>(r)] * f.scale * c;
  }
  return {d.begin(), d.end()};
}

SplineBasis build_web_basis(const DomainModel& domain, const GridSpec& grid, SplineOrder n, const IndexSets& sets) {
  if (sets.inner.empty()) throw Error(ErrorKind::EmptyBasis, "no inner B-splines");
  std::vector<SplineBasis::Function> fns(sets.inner.size());
  for (std::size_t p = 0; p < sets.inner.size(); ++p) {
    const double wi = domain.weight.value(sets.inner_center[p]);
    if (!(wi > 0.0)) throw Error(ErrorKind::DegenerateDomain, "weight does not vanish only on the Dirichlet part");
    fns[p].i = sets.inner[p];
    fns[p].center = sets.inner_center[p];
    fns[p].scale = 1.0 / wi;
    fns[p].terms.emplace_back(sets.inner[p], 1.0);
  }
  if (!sets.outer.empty()) {
    const InnerArrayFinder finder(sets.inner, n, grid.dim());
    for (const Index& j : sets.outer) {
      const Index alpha = finder.closest(j);
      for (const auto& [i, e] : extension_coeffs(j, alpha, n, grid.dim())) {
        const int p = *sets.inner_position(i);
        fns[static_cast<std::size_t>(p)].terms.emplace_back(j, e);
      }
    }
  }
  return SplineBasis(n, grid, domain.weight, std::move(fns));
}

SplineBasis build_extended_basis(const GridSpec& grid, SplineOrder n, const IndexSets& sets) {
  DomainModel unit;
  unit.dim = grid.dim();
  SplineBasis web = build_web_basis(unit, grid, n, sets);
  std::vector<SplineBasis::Function> fns;
  for (int r = 0; r < web.size(); ++r) {
    auto f = web.function(r);
    f.scale = 1.0;
    fns.push_back(std::move(f));
  }
  return SplineBasis(n, grid, WeightFunction(), std::move(fns));
}

SplineBasis build_weighted_bspline_basis(const DomainModel& domain, const GridSpec& grid, SplineOrder n,
                                         const IndexSets& sets) {
  std::vector<SplineBasis::Function> fns;
  for (const Index& k : sets.relevant) {
    SplineBasis::Function f;
    f.i = k;
    f.terms.emplace_back(k, 1.0);
    fns.push_back(std::move(f));
  }
  return SplineBasis(n, grid, domain.weight, std::move(fns));
}

double eval_web(const SplineBasis& basis, int r, const Point& x) { return basis.eval(r, x).value; }

Vec eval_web_gradient(const SplineBasis& basis, int r, const Point& x) { return basis.eval(r, x).grad; }

std::vector<std::pair<Index, double>> refine_coefficients(const std::vector<std::pair<Index, double>>& coarse,
                                                          SplineOrder n, int dim) {
  const std::vector<double> mask = refinement_mask(n);
  const int m = n.value() + 1;
  std::map<Index, double> fine;
  for (const auto& [k, d] : coarse) {
    for (int a = 0; a < m; ++a) {
      if (dim == 1) {
        fine[Index{2 * k[0] + a, 0}] += d * mask[static_cast<std::size_t>(a)];
        continue;
      }
      for (int b = 0; b < m; ++b)
        fine[Index{2 * k[0] + a, 2 * k[1] + b}] += d * mask[static_cast<std::size_t>(a)] * mask[static_cast<std::size_t>(b)];
    }
  }
  return {fine.begin(), fine.end()};
}

}  // namespace webs
