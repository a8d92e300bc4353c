#pragma once

#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace webs {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Matrix entry tagged with the work item that produced it, so that the
/// summation order does not depend on how items were spread over threads.
struct TaggedEntry {
  int row;
  int col;
  long key;
  double value;
};

/// Sorts by (row, col, key) and sums duplicates in that order.
SparseMatrix build_sparse(int rows, int cols, std::vector<TaggedEntry> entries);

/// Same ordering rule for a vector (col ignored).
Vector build_vector(int rows, std::vector<TaggedEntry> entries);

/// max |A - A^T| / max |A|; 0 for the zero matrix.
double relative_asymmetry(const SparseMatrix& a);

}  // namespace webs
