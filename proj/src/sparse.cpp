#include "webs/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace webs {

namespace {

void sort_entries(std::vector<TaggedEntry>& e) {
  std::sort(e.begin(), e.end(), [](const TaggedEntry& a, const TaggedEntry& b) {
    return std::tie(a.row, a.col, a.key) < std::tie(b.row, b.col, b.key);
  });
}

}  // namespace

SparseMatrix build_sparse(int rows, int cols, std::vector<TaggedEntry> entries) {
  sort_entries(entries);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(entries.size());
  for (std::size_t p = 0; p < entries.size();) {
    double sum = 0.0;
    std::size_t q = p;
    while (q < entries.size() && entries[q].row == entries[p].row && entries[q].col == entries[p].col)
      sum += entries[q++].value;
    trip.emplace_back(entries[p].row, entries[p].col, sum);
    p = q;
  }
  SparseMatrix a(rows, cols);
  a.setFromTriplets(trip.begin(), trip.end());
  a.makeCompressed();
  return a;
}

Vector build_vector(int rows, std::vector<TaggedEntry> entries) {
  for (auto& e : entries) e.col = 0;
  sort_entries(entries);
  Vector v = Vector::Zero(rows);
  for (const auto& e : entries) v[e.row] += e.value;
  return v;
}

double relative_asymmetry(const SparseMatrix& a) {
  const SparseMatrix t = a.transpose();
  const SparseMatrix d = a - t;
  double dmax = 0.0, amax = 0.0;
  for (int k = 0; k < d.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(d, k); it; ++it) dmax = std::max(dmax, std::abs(it.value()));
  for (int k = 0; k < a.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) amax = std::max(amax, std::abs(it.value()));
  return amax == 0.0 ? 0.0 : dmax / amax;
}

}  // namespace webs
