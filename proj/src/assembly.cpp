#include "webs/assembly.hpp"

#include <algorithm>
#include <map>
#include <thread>

namespace webs {

namespace {

struct WorkItem {
  Index cell;
  const QuadratureRule* volume = nullptr;
  std::vector<const BoundaryQuadPoint*> neumann;
  std::vector<const BoundaryQuadPoint*> robin;
};

std::vector<WorkItem> work_items(const DomainQuadrature& quad) {
  std::map<Index, WorkItem> items;
  for (const auto& c : quad.cells) {
    auto& it = items[c.cell];
    it.cell = c.cell;
    it.volume = &c.rule;
  }
  for (const auto& p : quad.neumann) {
    auto& it = items[p.cell];
    it.cell = p.cell;
    it.neumann.push_back(&p);
  }
  for (const auto& p : quad.robin) {
    auto& it = items[p.cell];
    it.cell = p.cell;
    it.robin.push_back(&p);
  }
  std::vector<WorkItem> out;
  out.reserve(items.size());
  for (auto& [k, v] : items) out.push_back(std::move(v));
  return out;
}

Jet lift_or_zero(const ProblemData& data, int i, const Point& x) {
  const auto& u = data.lift[static_cast<std::size_t>(i)];
  return u ? u(x) : Jet{};
}

struct LocalAssembler {
  const ProblemData& data;
  const SplineBasis& basis;
  std::array<SpeciesCoefficients, 2> sp;
  int n;

  std::vector<SplineBasis::LocalValue> vals;
  std::vector<int> dofs;  // active basis indices of the item
  std::vector<double> mat;
  std::vector<double> vec;

  int local_index(int r) const {
    return static_cast<int>(std::lower_bound(dofs.begin(), dofs.end(), r) - dofs.begin());
  }

  void collect_dofs(const WorkItem& item) {
    dofs.clear();
    auto add = [&](const Point& x) {
      basis.local(x, vals);
      for (const auto& lv : vals) dofs.push_back(lv.r);
    };
    if (item.volume)
      for (const auto& q : item.volume->points) add(q.x);
    for (const auto* p : item.neumann) add(p->x);
    for (const auto* p : item.robin) add(p->x);
    std::sort(dofs.begin(), dofs.end());
    dofs.erase(std::unique(dofs.begin(), dofs.end()), dofs.end());
  }

  void run(const WorkItem& item, long key, std::vector<TaggedEntry>& a, std::vector<TaggedEntry>& b) {
    collect_dofs(item);
    const int L = static_cast<int>(dofs.size());
    const int M = 2 * L;
    mat.assign(static_cast<std::size_t>(M * M), 0.0);
    vec.assign(static_cast<std::size_t>(M), 0.0);
    auto A = [&](int i, int lr, int j, int lc) -> double& {
      return mat[static_cast<std::size_t>((i * L + lr) * M + j * L + lc)];
    };
    auto B = [&](int i, int lr) -> double& { return vec[static_cast<std::size_t>(i * L + lr)]; };

    std::vector<int> loc;
    if (item.volume) {
      for (const auto& q : item.volume->points) {
        basis.local(q.x, vals);
        loc.resize(vals.size());
        for (std::size_t p = 0; p < vals.size(); ++p) loc[p] = local_index(vals[p].r);
        const SymMat2 P = data.P(q.x);
        const std::array<Jet, 2> U{lift_or_zero(data, 0, q.x), lift_or_zero(data, 1, q.x)};
        for (int i = 0; i < 2; ++i) {
          const auto& s = sp[static_cast<std::size_t>(i)];
          const double kappa = s.kappa(q.x);
          const double F = s.F(q.x);
          const Vec pgu = P.apply(U[static_cast<std::size_t>(i)].grad);
          const double uj = U[static_cast<std::size_t>(s.other())].value;
          for (std::size_t p = 0; p < vals.size(); ++p) {
            const Jet& v = vals[p].jet;
            B(i, loc[p]) += q.weight * (F * v.value - s.s() * dot(pgu, v.grad) - kappa * uj * v.value);
            const Vec pgv = P.apply(v.grad);
            for (std::size_t c = 0; c < vals.size(); ++c) {
              const Jet& u = vals[c].jet;
              A(i, loc[p], i, loc[c]) += q.weight * s.s() * dot(pgv, u.grad);
              A(i, loc[p], s.other(), loc[c]) += q.weight * kappa * u.value * v.value;
            }
          }
        }
      }
    }
    for (const auto* bp : item.neumann) {
      basis.local(bp->x, vals);
      for (int i = 0; i < 2; ++i) {
        const double G = sp[static_cast<std::size_t>(i)].G(bp->x);
        for (const auto& lv : vals) B(i, local_index(lv.r)) += bp->weight * G * lv.jet.value;
      }
    }
    for (const auto* bp : item.robin) {
      basis.local(bp->x, vals);
      loc.resize(vals.size());
      for (std::size_t p = 0; p < vals.size(); ++p) loc[p] = local_index(vals[p].r);
      for (int i = 0; i < 2; ++i) {
        const auto& s = sp[static_cast<std::size_t>(i)];
        const double S = s.S(bp->x);
        const double rhs = s.H(bp->x) - S * lift_or_zero(data, i, bp->x).value;
        for (std::size_t p = 0; p < vals.size(); ++p) {
          const double v = vals[p].jet.value;
          B(i, loc[p]) += bp->weight * rhs * v;
          for (std::size_t c = 0; c < vals.size(); ++c)
            A(i, loc[p], i, loc[c]) += bp->weight * S * vals[c].jet.value * v;
        }
      }
    }
    for (int i = 0; i < 2; ++i) {
      for (int lr = 0; lr < L; ++lr) {
        const int row = i * n + dofs[static_cast<std::size_t>(lr)];
        b.push_back({row, 0, key, B(i, lr)});
        for (int j = 0; j < 2; ++j)
          for (int lc = 0; lc < L; ++lc) {
            const double v = A(i, lr, j, lc);
            if (v != 0.0) a.push_back({row, j * n + dofs[static_cast<std::size_t>(lc)], key, v});
          }
      }
    }
  }
};

}  // namespace

BlockSystem assemble(const ProblemData& data, const SplineBasis& basis, const DomainQuadrature& quad,
                     const AssemblyOptions& options) {
  if (basis.size() == 0) throw Error(ErrorKind::EmptyBasis, "no basis functions to assemble");
  BlockSystem sys;
  sys.basis_size = basis.size();
  sys.forms = species_forms(options.negate_second_equation);
  const auto items = work_items(quad);
  const int workers = std::max(1, std::min<int>(options.threads, static_cast<int>(items.size())));
  std::vector<std::vector<TaggedEntry>> a_parts(static_cast<std::size_t>(workers));
  std::vector<std::vector<TaggedEntry>> b_parts(static_cast<std::size_t>(workers));
  auto work = [&](int w) {
    LocalAssembler la{data, basis,
                      {species(data, sys.forms, 0), species(data, sys.forms, 1)},
                      basis.size(), {}, {}, {}, {}};
    for (std::size_t k = static_cast<std::size_t>(w); k < items.size(); k += static_cast<std::size_t>(workers))
      la.run(items[k], static_cast<long>(k), a_parts[static_cast<std::size_t>(w)],
             b_parts[static_cast<std::size_t>(w)]);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  std::vector<TaggedEntry> a_all, b_all;
  for (auto& p : a_parts) a_all.insert(a_all.end(), p.begin(), p.end());
  for (auto& p : b_parts) b_all.insert(b_all.end(), p.begin(), p.end());
  sys.A = build_sparse(sys.dofs(), sys.dofs(), std::move(a_all));
  sys.b = build_vector(sys.dofs(), std::move(b_all));
  return sys;
}

double energy_functional(const Vector& v, const BlockSystem& system) {
  if (v.size() != system.dofs()) throw Error(ErrorKind::DimensionMismatch, "coefficient vector has wrong length");
  return 0.5 * v.dot(system.A * v) - system.b.dot(v);
}

double bilinear_form(const ProblemData& data, const std::array<SpeciesForm, 2>& forms, const DomainQuadrature& quad,
                     const FieldPair& u, const FieldPair& v) {
  const std::array<SpeciesCoefficients, 2> sp{species(data, forms, 0), species(data, forms, 1)};
  double sum = 0.0;
  for (const auto& c : quad.cells) {
    for (const auto& q : c.rule.points) {
      const auto uu = u(q.x);
      const auto vv = v(q.x);
      const SymMat2 P = data.P(q.x);
      double local = 0.0;
      for (std::size_t i = 0; i < 2; ++i) {
        local += sp[i].s() * dot(P.apply(uu[i].grad), vv[i].grad);
        local += sp[i].kappa(q.x) * uu[1 - i].value * vv[i].value;
      }
      sum += q.weight * local;
    }
  }
  for (const auto& p : quad.robin) {
    const auto uu = u(p.x);
    const auto vv = v(p.x);
    for (std::size_t i = 0; i < 2; ++i) sum += p.weight * sp[i].S(p.x) * uu[i].value * vv[i].value;
  }
  return sum;
}

double load_form(const ProblemData& data, const std::array<SpeciesForm, 2>& forms, const DomainQuadrature& quad,
                 const FieldPair& v) {
  const std::array<SpeciesCoefficients, 2> sp{species(data, forms, 0), species(data, forms, 1)};
  double sum = 0.0;
  for (const auto& c : quad.cells)
    for (const auto& q : c.rule.points) {
      const auto vv = v(q.x);
      sum += q.weight * (sp[0].F(q.x) * vv[0].value + sp[1].F(q.x) * vv[1].value);
    }
  for (const auto& p : quad.neumann) {
    const auto vv = v(p.x);
    sum += p.weight * (sp[0].G(p.x) * vv[0].value + sp[1].G(p.x) * vv[1].value);
  }
  for (const auto& p : quad.robin) {
    const auto vv = v(p.x);
    sum += p.weight * (sp[0].H(p.x) * vv[0].value + sp[1].H(p.x) * vv[1].value);
  }
  return sum;
}

FieldPair lift_fields(const ProblemData& data) {
  return [&data](const Point& x) { return std::array<Jet, 2>{lift_or_zero(data, 0, x), lift_or_zero(data, 1, x)}; };
}

double energy_of_fields(const ProblemData& data, const std::array<SpeciesForm, 2>& forms,
                        const DomainQuadrature& quad, const FieldPair& v) {
  const double avv = bilinear_form(data, forms, quad, v, v);
  const double reduced = load_form(data, forms, quad, v) - bilinear_form(data, forms, quad, lift_fields(data), v);
  return 0.5 * avv - reduced;
}

}  // namespace webs
