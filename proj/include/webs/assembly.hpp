#pragma once

#include <array>

#include "webs/problem.hpp"
#include "webs/quadrature.hpp"
#include "webs/solution.hpp"
#include "webs/sparse.hpp"
#include "webs/web_basis.hpp"

namespace webs {

struct AssemblyOptions {
  bool negate_second_equation = false;
  int threads = 1;
};

/// Block system over the dofs (species i, basis function r) -> i * N + r.
struct BlockSystem {
  SparseMatrix A;
  Vector b;
  int basis_size = 0;
  std::array<SpeciesForm, 2> forms{};

  int dofs() const { return 2 * basis_size; }
  int dof(int species, int r) const { return species * basis_size + r; }
};

/// Galerkin system of the homogenized problem: trial u = U + sum c B,
/// test functions B_r for both species. Throws EmptyBasis.
BlockSystem assemble(const ProblemData& data, const SplineBasis& basis, const DomainQuadrature& quad,
                     const AssemblyOptions& options = {});

/// 1/2 v^T A v - b^T v. Throws DimensionMismatch.
double energy_functional(const Vector& v, const BlockSystem& system);

// Function-level forms, evaluated by quadrature on arbitrary field pairs.

/// a(u, v) summed over both species.
double bilinear_form(const ProblemData& data, const std::array<SpeciesForm, 2>& forms, const DomainQuadrature& quad,
                     const FieldPair& u, const FieldPair& v);

/// G(v) summed over both species.
double load_form(const ProblemData& data, const std::array<SpeciesForm, 2>& forms, const DomainQuadrature& quad,
                 const FieldPair& v);

/// J(v) = 1/2 a(v, v) - (G(v) - a(U, v)) for a homogeneous pair v.
double energy_of_fields(const ProblemData& data, const std::array<SpeciesForm, 2>& forms,
                        const DomainQuadrature& quad, const FieldPair& v);

/// The lifts (U1, U2) as a field pair.
FieldPair lift_fields(const ProblemData& data);

}  // namespace webs
