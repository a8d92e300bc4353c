#include "webs/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/SparseCholesky>

namespace webs {

std::array<double, 2> strong_residual(const ProblemData& data, const std::array<SpeciesForm, 2>& forms,
                                      const Point& x, const std::array<Jet, 2>& u) {
  std::array<double, 2> r{};
  for (int i = 0; i < 2; ++i) {
    const auto sc = species(data, forms, i);
    r[static_cast<std::size_t>(i)] = sc.s() * neg_div_flux(data, x, u[static_cast<std::size_t>(i)]) +
                                     sc.kappa(x) * u[static_cast<std::size_t>(sc.other())].value - sc.F(x);
  }
  return r;
}

double residual_epsilon(const FieldPair& u, const ProblemData& data, const std::array<SpeciesForm, 2>& forms,
                        const DomainQuadrature& fine, int order) {
  if (order < 3)
    throw Error(ErrorKind::SecondDerivativeUnavailable, "strong residual needs splines of order 3 or higher");
  double rr = 0.0, ff = 0.0;
  for (const auto& c : fine.cells)
    for (const auto& q : c.rule.points) {
      const auto r = strong_residual(data, forms, q.x, u(q.x));
      const double f1 = data.f[0](q.x), f2 = data.f[1](q.x);
      rr += q.weight * (r[0] * r[0] + r[1] * r[1]);
      ff += q.weight * (f1 * f1 + f2 * f2);
    }
  if (ff == 0.0) return std::sqrt(rr);
  return std::sqrt(rr / ff);
}

const char* to_string(FluxMode m) { return m == FluxMode::Projection ? "projection" : "identity"; }

const char* to_string(CouplingMode m) {
  switch (m) {
    case CouplingMode::None: return "none";
    case CouplingMode::Oracle: return "oracle";
    case CouplingMode::Surrogate: return "surrogate";
  }
  return "?";
}

namespace {

Vec scaled_flux(const ProblemData& data, double s, const Point& x, const Jet& u) {
  const Vec v = data.P(x).apply(u.grad);
  return {s * v[0], s * v[1]};
}

}  // namespace

FluxReconstruction reconstruct_flux(const DiscreteSolution& uh, const ProblemData& data,
                                    const std::array<SpeciesForm, 2>& forms, const DomainQuadrature& quad,
                                    FluxMode mode, std::shared_ptr<const SplineBasis> space) {
  FluxReconstruction rec;
  rec.mode = mode;
  const ProblemData* pd = &data;
  if (mode == FluxMode::Identity) {
    rec.eval = [uh, pd, forms](int i, const Point& x) {
      const auto u = uh.fields(x);
      const double s = forms[static_cast<std::size_t>(i)].diffusion;
      FluxValue fv;
      fv.flux = scaled_flux(*pd, s, x, u[static_cast<std::size_t>(i)]);
      fv.div = -s * neg_div_flux(*pd, x, u[static_cast<std::size_t>(i)]);
      return fv;
    };
    return rec;
  }
  if (!space) throw Error(ErrorKind::InvalidArgument, "flux projection needs a spline space");
  const int n = space->size();
  std::vector<Eigen::Triplet<double>> trip;
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n, 4);  // columns: (species, component)
  std::vector<SplineBasis::LocalValue> vals;
  for (const auto& c : quad.cells)
    for (const auto& q : c.rule.points) {
      space->local(q.x, vals);
      const auto u = uh.fields(q.x);
      std::array<Vec, 2> fl{scaled_flux(data, forms[0].diffusion, q.x, u[0]),
                            scaled_flux(data, forms[1].diffusion, q.x, u[1])};
      for (const auto& a : vals) {
        for (const auto& b : vals) trip.emplace_back(a.r, b.r, q.weight * a.jet.value * b.jet.value);
        for (int i = 0; i < 2; ++i)
          for (int k = 0; k < 2; ++k) rhs(a.r, 2 * i + k) += q.weight * fl[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * a.jet.value;
      }
    }
  Eigen::SparseMatrix<double> mass(n, n);
  mass.setFromTriplets(trip.begin(), trip.end());
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(mass);
  if (llt.info() != Eigen::Success) throw Error(ErrorKind::ProjectionSingular, "flux mass matrix is singular");
  const Eigen::MatrixXd coeffs = llt.solve(rhs);
  if (llt.info() != Eigen::Success || !coeffs.allFinite())
    throw Error(ErrorKind::ProjectionSingular, "flux projection failed");
  rec.eval = [space, coeffs](int i, const Point& x) {
    thread_local std::vector<SplineBasis::LocalValue> v;
    space->local(x, v);
    FluxValue fv;
    for (const auto& lv : v) {
      const double a0 = coeffs(lv.r, 2 * i), a1 = coeffs(lv.r, 2 * i + 1);
      fv.flux[0] += a0 * lv.jet.value;
      fv.flux[1] += a1 * lv.jet.value;
      fv.div += a0 * lv.jet.grad[0] + a1 * lv.jet.grad[1];
    }
    return fv;
  };
  return rec;
}

std::vector<std::pair<std::string, std::string>> EstimatorBreakdown::to_record() const {
  auto num = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  std::vector<std::pair<std::string, std::string>> out;
  for (int i = 0; i < 2; ++i) {
    const auto& t = species[static_cast<std::size_t>(i)];
    const std::string p = "species" + std::to_string(i + 1) + ".";
    out.emplace_back(p + "t_resid_interior", num(t.resid));
    out.emplace_back(p + "t_robin", num(t.robin));
    out.emplace_back(p + "t_flux", num(t.flux));
    out.emplace_back(p + "t_degenerate", num(t.degenerate));
    out.emplace_back(p + "t_neumann", num(t.neumann));
    out.emplace_back(p + "t_coupling", num(t.coupling));
  }
  out.emplace_back("total", num(total));
  out.emplace_back("theta_tilde", num(theta_tilde));
  out.emplace_back("coupling_mode", to_string(coupling_mode));
  return out;
}

double default_theta_tilde(const ProblemData& data, const DomainQuadrature& quad) {
  double m = 0.0;
  for (const auto& c : quad.cells)
    for (const auto& q : c.rule.points) m = std::max(m, std::min(data.tau[0](q.x), data.tau[1](q.x)));
  return 0.01 * m;
}

bool in_tau_positive_part(const ProblemData& data, const Point& x, double theta_tilde) {
  const double t = std::min(data.tau[0](x), data.tau[1](x));
  return t > 0.0 && t >= theta_tilde;
}

namespace {

/// d^T P^{-1} d; throws when P is not positive definite.
double inverse_norm2(const SymMat2& p, const Vec& d, bool one_dimensional) {
  if (one_dimensional) {
    if (!(p.xx > 0.0)) throw Error(ErrorKind::NonEllipticDiffusion, "diffusion coefficient is not positive");
    return d[0] * d[0] / p.xx;
  }
  const double det = p.xx * p.yy - p.xy * p.xy;
  if (!(p.xx > 0.0 && det > 0.0))
    throw Error(ErrorKind::NonEllipticDiffusion, "diffusion matrix is not positive definite");
  return (p.yy * d[0] * d[0] - 2.0 * p.xy * d[0] * d[1] + p.xx * d[1] * d[1]) / det;
}

double resolved_theta(const UpperBoundInput& in) {
  return in.theta_tilde > 0.0 ? in.theta_tilde : default_theta_tilde(*in.data, *in.quad);
}

bool is_one_dimensional(const DomainQuadrature& q) { return q.grid.dim() == 1; }

}  // namespace

EstimatorBreakdown upper_bound(const UpperBoundInput& in) {
  const ProblemData& data = *in.data;
  const DomainQuadrature& quad = *in.quad;
  const FluxReconstruction& flux = *in.flux;
  const bool one_d = is_one_dimensional(quad);
  EstimatorBreakdown out;
  out.theta_tilde = resolved_theta(in);
  out.coupling_mode = in.reference ? in.coupling_mode : CouplingMode::None;
  const std::array<SpeciesCoefficients, 2> sp{species(data, in.forms, 0), species(data, in.forms, 1)};

  for (const auto& c : quad.cells) {
    for (const auto& q : c.rule.points) {
      const auto u = in.uh(q.x);
      const bool positive = in_tau_positive_part(data, q.x, out.theta_tilde);
      std::array<Jet, 2> ref{};
      if (in.reference && positive) ref = in.reference(q.x);
      const SymMat2 P = data.P(q.x);
      for (std::size_t i = 0; i < 2; ++i) {
        const std::size_t j = 1 - i;
        auto& t = out.species[i];
        const FluxValue fv = flux(static_cast<int>(i), q.x);
        const double R = sp[i].F(q.x) + fv.div - sp[i].kappa(q.x) * u[j].value;
        if (positive) {
          const double tau_j = sp[i].tau_other(q.x);
          t.resid += q.weight * R * R / tau_j;
          if (in.reference) {
            const double e = ref[j].value - u[j].value;
            t.coupling += q.weight * tau_j * e * e;
          }
        } else {
          t.degenerate += q.weight * R * R;
        }
        const Vec pg = P.apply(u[i].grad);
        const Vec d{fv.flux[0] - sp[i].s() * pg[0], fv.flux[1] - sp[i].s() * pg[1]};
        t.flux += q.weight * inverse_norm2(P, d, one_d);
      }
    }
  }
  for (const auto& p : quad.neumann) {
    for (std::size_t i = 0; i < 2; ++i) {
      const FluxValue fv = flux(static_cast<int>(i), p.x);
      const double r = sp[i].G(p.x) - dot(p.normal, fv.flux);
      out.species[i].neumann += p.weight * r * r;
    }
  }
  for (const auto& p : quad.robin) {
    const auto u = in.uh(p.x);
    for (std::size_t i = 0; i < 2; ++i) {
      const FluxValue fv = flux(static_cast<int>(i), p.x);
      const double S = sp[i].S(p.x);
      const double r = sp[i].H(p.x) - S * u[i].value - dot(p.normal, fv.flux);
      // A vanishing Robin coefficient degenerates to a Neumann condition.
      const double scale = S == 0.0 ? 1.0 : 1.0 / std::abs(S);
      out.species[i].robin += p.weight * r * r * scale;
    }
  }
  out.total = out.species[0].sum() + out.species[1].sum();
  return out;
}

namespace {

/// Volume terms of the Dirichlet-type estimates, one species at a time.
void dirichlet_volume_terms(const UpperBoundInput& in, double theta, int i, SpeciesTerms& t) {
  const ProblemData& data = *in.data;
  const auto sc = species(data, in.forms, i);
  const int j = sc.other();
  const bool one_d = is_one_dimensional(*in.quad);
  for (const auto& c : in.quad->cells) {
    for (const auto& q : c.rule.points) {
      const auto u = in.uh(q.x);
      const FluxValue fv = (*in.flux)(i, q.x);
      const double residual = sc.F(q.x) + fv.div - sc.kappa(q.x) * u[static_cast<std::size_t>(j)].value;
      const double tau1 = data.tau[0](q.x), tau2 = data.tau[1](q.x);
      const double tmin = tau1 < tau2 ? tau1 : tau2;
      if (tmin > 0.0 && tmin >= theta) {
        t.resid += q.weight * residual * residual / sc.tau_other(q.x);
        if (in.reference) {
          const double e = in.reference(q.x)[static_cast<std::size_t>(j)].value - u[static_cast<std::size_t>(j)].value;
          t.coupling += q.weight * sc.tau_other(q.x) * e * e;
        }
      } else {
        t.degenerate += q.weight * residual * residual;
      }
      const SymMat2 P = data.P(q.x);
      const Vec g = u[static_cast<std::size_t>(i)].grad;
      const Vec d{fv.flux[0] - sc.s() * (P.xx * g[0] + P.xy * g[1]),
                  fv.flux[1] - sc.s() * (P.xy * g[0] + P.yy * g[1])};
      t.flux += q.weight * inverse_norm2(P, d, one_d);
    }
  }
}

}  // namespace

EstimatorBreakdown upper_bound_dirichlet(const UpperBoundInput& in) {
  if (!in.quad->neumann.empty() || !in.quad->robin.empty())
    throw Error(ErrorKind::InvalidArgument, "pure Dirichlet estimate needs empty Neumann and Robin parts");
  EstimatorBreakdown out;
  out.theta_tilde = resolved_theta(in);
  out.coupling_mode = in.reference ? in.coupling_mode : CouplingMode::None;
  for (int i = 0; i < 2; ++i) dirichlet_volume_terms(in, out.theta_tilde, i, out.species[static_cast<std::size_t>(i)]);
  out.total = out.species[0].sum() + out.species[1].sum();
  return out;
}

EstimatorBreakdown upper_bound_dirichlet_neumann(const UpperBoundInput& in) {
  if (!in.quad->robin.empty())
    throw Error(ErrorKind::InvalidArgument, "Dirichlet/Neumann estimate needs an empty Robin part");
  EstimatorBreakdown out;
  out.theta_tilde = resolved_theta(in);
  out.coupling_mode = in.reference ? in.coupling_mode : CouplingMode::None;
  for (int i = 0; i < 2; ++i) {
    auto& t = out.species[static_cast<std::size_t>(i)];
    dirichlet_volume_terms(in, out.theta_tilde, i, t);
    const auto sc = species(*in.data, in.forms, i);
    for (const auto& p : in.quad->neumann) {
      const FluxValue fv = (*in.flux)(i, p.x);
      const double r = sc.G(p.x) - (p.normal[0] * fv.flux[0] + p.normal[1] * fv.flux[1]);
      t.neumann += p.weight * r * r;
    }
  }
  out.total = out.species[0].sum() + out.species[1].sum();
  return out;
}

double lower_bound(const ProblemData& data, const std::array<SpeciesForm, 2>& forms, const DomainQuadrature& quad,
                   const FieldPair& uh_star, const std::vector<FieldPair>& candidates) {
  const double ju = energy_of_fields(data, forms, quad, uh_star);
  double best = 0.0;
  for (const auto& v : candidates) best = std::max(best, 2.0 * (ju - energy_of_fields(data, forms, quad, v)));
  return best;
}

double energy_error(const ProblemData& data, const std::array<SpeciesForm, 2>& forms, const DomainQuadrature& quad,
                    const FieldPair& exact, const FieldPair& uh) {
  const FieldPair e = difference(exact, uh);
  return bilinear_form(data, forms, quad, e, e);
}

}  // namespace webs
