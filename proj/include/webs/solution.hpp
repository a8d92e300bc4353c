#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "webs/problem.hpp"
#include "webs/sparse.hpp"
#include "webs/web_basis.hpp"

namespace webs {

/// A pair of fields (species 1, species 2) with derivatives up to order two.
using FieldPair = std::function<std::array<Jet, 2>(const Point&)>;

/// u_i^h = U_i + sum_r c_{i,r} B_r, with the block layout dof = i * N + r.
class DiscreteSolution {
 public:
  DiscreteSolution(std::shared_ptr<const SplineBasis> basis, std::array<JetField, 2> lift, Vector coeffs);

  const SplineBasis& basis() const { return *basis_; }
  std::shared_ptr<const SplineBasis> basis_ptr() const { return basis_; }
  const Vector& coeffs() const { return coeffs_; }
  std::vector<double> species_coeffs(int i) const;

  /// The homogeneous part sum_r c_{i,r} B_r.
  std::array<Jet, 2> homogeneous(const Point& x) const;
  /// The full fields U_i + homogeneous part.
  std::array<Jet, 2> fields(const Point& x) const;

  FieldPair homogeneous_fn() const;
  FieldPair fields_fn() const;

 private:
  std::shared_ptr<const SplineBasis> basis_;
  std::array<JetField, 2> lift_;
  Vector coeffs_;
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator*(double s, const Jet& a);

/// Pointwise difference of two field pairs.
FieldPair difference(FieldPair a, FieldPair b);

/// Coefficients, in `fine` (a weighted B-spline basis on the grid h/2 with
/// the same weight), of the homogeneous part of `coarse`. Exact because the
/// spline spaces are nested.
Vector embed_in_fine_basis(const SplineBasis& coarse, const Vector& coarse_coeffs, const SplineBasis& fine);

}  // namespace webs
