#pragma once

#include <array>
#include <cstdint>
#include <functional>

#include "webs/geometry.hpp"

namespace webs {

using ScalarField = std::function<double(const Point&)>;
using JetField = std::function<Jet(const Point&)>;
using MatrixField = std::function<SymMat2(const Point&)>;
using VectorField = std::function<Vec(const Point&)>;

/// Coefficients of the coupled system, stored in the signed convention of
/// the weak form:
///   species 1:  -div(P grad u1) - tau2 u2 = f1,  nu.P grad u1 = g1,  nu.P grad u1 + sigma1 u1 = h1
///   species 2:   div(P grad u2) + tau1 u1 = f2, -nu.P grad u2 = g2, -nu.P grad u2 + sigma2 u2 = h2
/// Index 0 holds species 1. tau[0] = tau1 multiplies u1 in the second equation.
struct ProblemData {
  MatrixField P;
  /// (div P)_b = sum_a d_a P_ab; empty means divergence free.
  VectorField div_P;
  std::array<ScalarField, 2> tau;
  std::array<ScalarField, 2> sigma;
  std::array<ScalarField, 2> f;
  std::array<ScalarField, 2> g;
  std::array<ScalarField, 2> h;
  /// Dirichlet lifts U1, U2 (defined on all of the domain).
  std::array<JetField, 2> lift;

  Vec divergence_of_P(const Point& x) const;
};

/// Species i written as
///   -div(s P grad u_i) + kappa_i u_j = F_i,  nu.s P grad u_i = G_i,  nu.s P grad u_i + S_i u_i = H_i
/// with kappa_i = coupling * tau_j and (F, G, H, S) = data * (f, g, h, sigma).
/// The literal system has s = (+1, -1); negating the second equation makes
/// both diffusion signs positive and the bilinear form symmetric.
struct SpeciesForm {
  double diffusion = 1.0;
  double coupling = -1.0;
  double data = 1.0;
};

std::array<SpeciesForm, 2> species_forms(bool negate_second_equation);

/// Pointwise coefficients of one species in the form above.
struct SpeciesCoefficients {
  const ProblemData* data;
  SpeciesForm form;
  int i;

  int other() const { return 1 - i; }
  double s() const { return form.diffusion; }
  /// Coefficient of u_j in equation i.
  double kappa(const Point& x) const { return form.coupling * data->tau[static_cast<std::size_t>(other())](x); }
  /// The paper-side tau_j without sign.
  double tau_other(const Point& x) const { return data->tau[static_cast<std::size_t>(other())](x); }
  double F(const Point& x) const { return form.data * data->f[static_cast<std::size_t>(i)](x); }
  double G(const Point& x) const { return form.data * data->g[static_cast<std::size_t>(i)](x); }
  double H(const Point& x) const { return form.data * data->h[static_cast<std::size_t>(i)](x); }
  double S(const Point& x) const { return form.data * data->sigma[static_cast<std::size_t>(i)](x); }
};

SpeciesCoefficients species(const ProblemData& data, const std::array<SpeciesForm, 2>& forms, int i);

/// -div(P grad u) from the jet of u.
double neg_div_flux(const ProblemData& data, const Point& x, const Jet& u);

struct EllipticityReport {
  double c1 = 0.0;  // smallest sampled eigenvalue of P
  double c2 = 0.0;  // largest
  double min_tau = 0.0;
  int samples = 0;
  bool elliptic() const { return c1 > 0.0; }
};

/// Samples P and tau at `count` random points inside the domain.
EllipticityReport sample_coefficients(const ProblemData& data, const DomainModel& domain, int count,
                                      std::uint64_t seed = 0);

/// Eigenvalues of a symmetric 2x2 matrix, ascending.
std::array<double, 2> eigenvalues(const SymMat2& m);

}  // namespace webs
