#include "webs/grid.hpp"

#include <cmath>

namespace webs {

CellMap::CellMap(GridSpec grid, Index lo, Index hi) : grid_(grid), lo_(lo), hi_(hi) {
  if (grid_.dim() == 1) {
    lo_[1] = 0;
    hi_[1] = 1;
  }
  const std::size_t size =
      static_cast<std::size_t>(hi_[0] - lo_[0]) * static_cast<std::size_t>(hi_[1] - lo_[1]);
  tags_.assign(size, CellClass::Exterior);
}

bool CellMap::contains(const Index& l) const {
  for (int mu = 0; mu < 2; ++mu)
    if (l[mu] < lo_[mu] || l[mu] >= hi_[mu]) return false;
  return true;
}

std::size_t CellMap::offset(const Index& l) const {
  return static_cast<std::size_t>(l[0] - lo_[0]) * static_cast<std::size_t>(hi_[1] - lo_[1]) +
         static_cast<std::size_t>(l[1] - lo_[1]);
}

CellClass CellMap::at(const Index& l) const { return contains(l) ? tags_[offset(l)] : CellClass::Exterior; }

void CellMap::set(const Index& l, CellClass c) {
  if (!contains(l)) throw Error(ErrorKind::InvalidArgument, "cell outside classification window");
  tags_[offset(l)] = c;
}

std::vector<Index> CellMap::cells(CellClass c) const {
  std::vector<Index> out;
  for (int a = lo_[0]; a < hi_[0]; ++a)
    for (int b = lo_[1]; b < hi_[1]; ++b)
      if (at({a, b}) == c) out.push_back({a, b});
  return out;
}

CellClass classify_box(const DomainModel& domain, const Box& box, int samples) {
  if (domain.classify_override) {
    if (auto c = domain.classify_override(box)) return *c;
  }
  bool all_inside = true;
  bool any_strict = false;
  const int sy = domain.dim == 1 ? 1 : samples;
  for (int a = 0; a < samples; ++a) {
    for (int b = 0; b < sy; ++b) {
      Point p{box.lo[0] + (box.hi[0] - box.lo[0]) * a / (samples - 1), 0.0};
      if (domain.dim == 2) p[1] = box.lo[1] + (box.hi[1] - box.lo[1]) * b / (samples - 1);
      const double phi = domain.level_set(p);
      if (phi < 0.0) all_inside = false;
      if (phi > 0.0) any_strict = true;
    }
  }
  if (all_inside) return CellClass::Interior;
  if (!any_strict) return CellClass::Exterior;
  return CellClass::Boundary;
}

CellMap classify_cells(const DomainModel& domain, const GridSpec& grid) {
  if (grid.dim() != domain.dim) throw Error(ErrorKind::DimensionMismatch, "grid and domain dimensions differ");
  const double h = grid.h();
  Index lo{0, 0}, hi{1, 1};
  for (int mu = 0; mu < grid.dim(); ++mu) {
    lo[mu] = static_cast<int>(std::floor(domain.bbox.lo[mu] / h)) - 1;
    hi[mu] = static_cast<int>(std::ceil(domain.bbox.hi[mu] / h)) + 1;
  }
  CellMap map(grid, lo, hi);
  bool any_interior = false;
  for (int a = map.lo()[0]; a < map.hi()[0]; ++a) {
    for (int b = map.lo()[1]; b < map.hi()[1]; ++b) {
      const Index l{a, b};
      const CellClass c = classify_box(domain, grid.cell_box(l));
      map.set(l, c);
      any_interior = any_interior || c == CellClass::Interior;
    }
  }
  if (!any_interior) throw Error(ErrorKind::DegenerateDomain, "no interior cell; grid width too coarse");
  return map;
}

std::optional<int> IndexSets::inner_position(const Index& i) const {
  auto it = inner_lookup.find(i);
  if (it == inner_lookup.end()) return std::nullopt;
  return it->second;
}

std::optional<int> IndexSets::outer_position(const Index& j) const {
  auto it = outer_lookup.find(j);
  if (it == outer_lookup.end()) return std::nullopt;
  return it->second;
}

IndexSets build_index_sets(const DomainModel& domain, const GridSpec& grid, SplineOrder n, const CellMap& cells) {
  if (grid.dim() != domain.dim) throw Error(ErrorKind::DimensionMismatch, "grid and domain dimensions differ");
  IndexSets sets;
  const int order = n.value();
  const int dim = grid.dim();
  const Index lo = cells.lo();
  const Index hi = cells.hi();
  const int b_lo = dim == 2 ? lo[1] - order + 1 : 0;
  const int b_hi = dim == 2 ? hi[1] : 1;
  for (int a = lo[0] - order + 1; a < hi[0]; ++a) {
    for (int b = b_lo; b < b_hi; ++b) {
      const Index k{a, b};
      bool relevant = false;
      std::optional<Index> first_interior;
      for_each_offset(order, dim, [&](const Index& o) {
        const Index l{k[0] + o[0], k[1] + o[1]};
        const CellClass c = cells.at(l);
        if (c != CellClass::Exterior) relevant = true;
        if (c == CellClass::Interior && !first_interior) first_interior = l;
      });
      if (!relevant) continue;
      sets.relevant.push_back(k);
      if (first_interior) {
        sets.inner_lookup[k] = static_cast<int>(sets.inner.size());
        sets.inner.push_back(k);
        sets.inner_cell.push_back(*first_interior);
        sets.inner_center.push_back(grid.cell_center(*first_interior));
      } else {
        sets.outer_lookup[k] = static_cast<int>(sets.outer.size());
        sets.outer.push_back(k);
      }
    }
  }
  return sets;
}

}  // namespace webs
