#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "webs/assembly.hpp"
#include "webs/problem.hpp"
#include "webs/quadrature.hpp"
#include "webs/solution.hpp"

namespace webs {

/// Strong residual r_i = s_i (-div(P grad u_i)) + kappa_i u_j - F_i of a
/// field pair at x.
std::array<double, 2> strong_residual(const ProblemData& data, const std::array<SpeciesForm, 2>& forms,
                                      const Point& x, const std::array<Jet, 2>& u);

/// ||r||_0 / ||f||_0 over the given (finer) quadrature. The strong form needs
/// second derivatives, so orders below 3 throw SecondDerivativeUnavailable.
double residual_epsilon(const FieldPair& u, const ProblemData& data, const std::array<SpeciesForm, 2>& forms,
                        const DomainQuadrature& fine, int order);

enum class FluxMode { Projection, Identity };

const char* to_string(FluxMode m);

struct FluxValue {
  Vec flux{0.0, 0.0};
  double div = 0.0;
};

/// A vector field u*_i per species with its divergence.
struct FluxReconstruction {
  FluxMode mode = FluxMode::Projection;
  std::function<FluxValue(int, const Point&)> eval;

  FluxValue operator()(int species, const Point& x) const { return eval(species, x); }
};

/// Projection: L2 projection of each component of s_i P grad u_i^h onto the
/// spline space `space` (unweighted), solved by Cholesky (ProjectionSingular
/// on failure). Identity: u*_i = s_i P grad u_i^h itself, with the
/// divergence from second derivatives.
FluxReconstruction reconstruct_flux(const DiscreteSolution& uh, const ProblemData& data,
                                    const std::array<SpeciesForm, 2>& forms, const DomainQuadrature& quad,
                                    FluxMode mode, std::shared_ptr<const SplineBasis> space = nullptr);

enum class CouplingMode { None, Oracle, Surrogate };

const char* to_string(CouplingMode m);

struct SpeciesTerms {
  double resid = 0.0;       // ||(F + div u* - kappa u_j^h) / sqrt(tau_j)||^2 on the tau-positive part
  double robin = 0.0;       // ||(H - S u^h - nu.u*) / sqrt|S|||^2 on the Robin part
  double flux = 0.0;        // |||P^{-1} u* - s grad u^h|||^2
  double degenerate = 0.0;  // ||F + div u* - kappa u_j^h||^2 where tau is small
  double neumann = 0.0;     // ||G - nu.u*||^2 on the Neumann part
  double coupling = 0.0;    // ||sqrt(tau_j) (u_j - u_j^h)||^2 on the tau-positive part

  double sum() const { return resid + robin + flux + degenerate + neumann + coupling; }
};

struct EstimatorBreakdown {
  std::array<SpeciesTerms, 2> species{};
  double total = 0.0;
  double theta_tilde = 0.0;
  CouplingMode coupling_mode = CouplingMode::None;

  /// Flat key/value record (species1.resid, ..., total, theta_tilde, coupling_mode).
  std::vector<std::pair<std::string, std::string>> to_record() const;
};

/// 0.01 * max over quadrature points of min(tau1, tau2).
double default_theta_tilde(const ProblemData& data, const DomainQuadrature& quad);

/// Whether x belongs to the part where min tau_j >= theta_tilde > 0.
bool in_tau_positive_part(const ProblemData& data, const Point& x, double theta_tilde);

struct UpperBoundInput {
  const ProblemData* data = nullptr;
  std::array<SpeciesForm, 2> forms{};
  const DomainQuadrature* quad = nullptr;
  FieldPair uh;                 // full discrete fields U + u*^h
  const FluxReconstruction* flux = nullptr;
  double theta_tilde = 0.0;     // <= 0 selects the default
  FieldPair reference;          // empty: coupling term omitted
  CouplingMode coupling_mode = CouplingMode::None;
};

/// Every term of the majorant, all boundary parts included. Throws
/// NonEllipticDiffusion if P is not positive definite at a quadrature point.
EstimatorBreakdown upper_bound(const UpperBoundInput& in);

/// Pure Dirichlet variant (no Neumann and Robin parts; InvalidArgument otherwise).
EstimatorBreakdown upper_bound_dirichlet(const UpperBoundInput& in);

/// Dirichlet/Neumann variant (no Robin part; InvalidArgument otherwise).
EstimatorBreakdown upper_bound_dirichlet_neumann(const UpperBoundInput& in);

/// max(0, max_k 2 (J(u*^h) - J(v_k))) over homogeneous candidates v_k.
double lower_bound(const ProblemData& data, const std::array<SpeciesForm, 2>& forms, const DomainQuadrature& quad,
                   const FieldPair& uh_star, const std::vector<FieldPair>& candidates);

/// a(u - u^h, u - u^h) for a known (exact or reference) solution.
double energy_error(const ProblemData& data, const std::array<SpeciesForm, 2>& forms, const DomainQuadrature& quad,
                    const FieldPair& exact, const FieldPair& uh);

}  // namespace webs
