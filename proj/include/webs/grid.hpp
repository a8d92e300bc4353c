#pragma once

#include <map>
#include <optional>
#include <vector>

#include "webs/bspline.hpp"
#include "webs/geometry.hpp"

namespace webs {

/// Classification of every cell in a padded window around the domain.
/// Cells outside the window are Exterior.
class CellMap {
 public:
  CellMap(GridSpec grid, Index lo, Index hi);

  const GridSpec& grid() const { return grid_; }
  Index lo() const { return lo_; }
  Index hi() const { return hi_; }

  CellClass at(const Index& l) const;
  void set(const Index& l, CellClass c);

  /// Cells with the given tag, lexicographic order.
  std::vector<Index> cells(CellClass c) const;
  std::size_t count(CellClass c) const { return cells(c).size(); }

 private:
  std::size_t offset(const Index& l) const;
  bool contains(const Index& l) const;

  GridSpec grid_;
  Index lo_;
  Index hi_;
  std::vector<CellClass> tags_;
};

/// Classifies a closed box against the domain: the exact override when the
/// domain provides one, otherwise a samples^m lattice including the corners
/// (Interior: all lattice points in the closed domain; Exterior: none
/// strictly inside).
CellClass classify_box(const DomainModel& domain, const Box& box, int samples = 5);

/// Throws DegenerateDomain when no cell is Interior.
CellMap classify_cells(const DomainModel& domain, const GridSpec& grid);

/// Relevant (K), inner (I) and outer (J) B-spline indices.
struct IndexSets {
  std::vector<Index> relevant;
  std::vector<Index> inner;
  std::vector<Index> outer;
  /// For inner[p]: the Interior cell Q_{i + l(i)} and its center x_i.
  std::vector<Index> inner_cell;
  std::vector<Point> inner_center;

  std::optional<int> inner_position(const Index& i) const;
  std::optional<int> outer_position(const Index& j) const;
  bool is_inner(const Index& i) const { return inner_position(i).has_value(); }

  std::map<Index, int> inner_lookup;
  std::map<Index, int> outer_lookup;
};

IndexSets build_index_sets(const DomainModel& domain, const GridSpec& grid, SplineOrder n, const CellMap& cells);

/// Iterates over the n^m offsets {0..n-1}^m in lexicographic order.
template <class F>
void for_each_offset(int n, int dim, F&& f) {
  if (dim == 1) {
    for (int a = 0; a < n; ++a) f(Index{a, 0});
    return;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) f(Index{a, b});
}

}  // namespace webs
