#include "webs/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace webs {

Vec ProblemData::divergence_of_P(const Point& x) const {
  if (!div_P) return {0.0, 0.0};
  return div_P(x);
}

std::array<SpeciesForm, 2> species_forms(bool negate_second_equation) {
  std::array<SpeciesForm, 2> f{SpeciesForm{1.0, -1.0, 1.0}, SpeciesForm{-1.0, 1.0, 1.0}};
  if (negate_second_equation) f[1] = SpeciesForm{1.0, -1.0, -1.0};
  return f;
}

SpeciesCoefficients species(const ProblemData& data, const std::array<SpeciesForm, 2>& forms, int i) {
  return SpeciesCoefficients{&data, forms[static_cast<std::size_t>(i)], i};
}

double neg_div_flux(const ProblemData& data, const Point& x, const Jet& u) {
  const SymMat2 p = data.P(x);
  const Vec dp = data.divergence_of_P(x);
  const double contraction = p.xx * u.hess.xx + 2.0 * p.xy * u.hess.xy + p.yy * u.hess.yy;
  return -(dp[0] * u.grad[0] + dp[1] * u.grad[1] + contraction);
}

std::array<double, 2> eigenvalues(const SymMat2& m) {
  const double mean = 0.5 * (m.xx + m.yy);
  const double r = std::hypot(0.5 * (m.xx - m.yy), m.xy);
  return {mean - r, mean + r};
}

EllipticityReport sample_coefficients(const ProblemData& data, const DomainModel& domain, int count,
                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(domain.bbox.lo[0], domain.bbox.hi[0]);
  std::uniform_real_distribution<double> uy(domain.bbox.lo[1], domain.bbox.hi[1]);
  EllipticityReport rep;
  rep.c1 = std::numeric_limits<double>::infinity();
  rep.c2 = -std::numeric_limits<double>::infinity();
  rep.min_tau = std::numeric_limits<double>::infinity();
  int tries = 0;
  while (rep.samples < count && tries < 100 * count) {
    ++tries;
    const Point x{ux(rng), domain.dim == 2 ? uy(rng) : 0.0};
    if (!domain.strictly_inside(x)) continue;
    ++rep.samples;
    SymMat2 p = data.P(x);
    if (domain.dim == 1) p.xy = 0.0, p.yy = p.xx;
    const auto ev = eigenvalues(p);
    rep.c1 = std::min(rep.c1, ev[0]);
    rep.c2 = std::max(rep.c2, ev[1]);
    rep.min_tau = std::min({rep.min_tau, data.tau[0](x), data.tau[1](x)});
  }
  return rep;
}

}  // namespace webs
