#include "webs/solution.hpp"

#include <map>

namespace webs {

DiscreteSolution::DiscreteSolution(std::shared_ptr<const SplineBasis> basis, std::array<JetField, 2> lift,
                                   Vector coeffs)
    : basis_(std::move(basis)), lift_(std::move(lift)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != 2 * basis_->size())
    throw Error(ErrorKind::DimensionMismatch, "solution needs two coefficients per basis function");
}

std::vector<double> DiscreteSolution::species_coeffs(int i) const {
  const int n = basis_->size();
  return std::vector<double>(coeffs_.data() + i * n, coeffs_.data() + (i + 1) * n);
}

std::array<Jet, 2> DiscreteSolution::homogeneous(const Point& x) const {
  thread_local std::vector<SplineBasis::LocalValue> vals;
  basis_->local(x, vals);
  const int n = basis_->size();
  std::array<Jet, 2> u{};
  for (const auto& lv : vals) {
    for (int i = 0; i < 2; ++i) {
      const double c = coeffs_[i * n + lv.r];
      u[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)] + c * lv.jet;
    }
  }
  return u;
}

std::array<Jet, 2> DiscreteSolution::fields(const Point& x) const {
  auto u = homogeneous(x);
  for (std::size_t i = 0; i < 2; ++i)
    if (lift_[i]) u[i] = u[i] + lift_[i](x);
  return u;
}

FieldPair DiscreteSolution::homogeneous_fn() const {
  return [this](const Point& x) { return homogeneous(x); };
}

FieldPair DiscreteSolution::fields_fn() const {
  return [this](const Point& x) { return fields(x); };
}

Jet operator+(const Jet& a, const Jet& b) {
  Jet j;
  j.value = a.value + b.value;
  j.grad = {a.grad[0] + b.grad[0], a.grad[1] + b.grad[1]};
  j.hess = {a.hess.xx + b.hess.xx, a.hess.xy + b.hess.xy, a.hess.yy + b.hess.yy};
  return j;
}

Jet operator*(double s, const Jet& a) {
  Jet j;
  j.value = s * a.value;
  j.grad = {s * a.grad[0], s * a.grad[1]};
  j.hess = {s * a.hess.xx, s * a.hess.xy, s * a.hess.yy};
  return j;
}

Jet operator-(const Jet& a, const Jet& b) { return a + (-1.0) * b; }

FieldPair difference(FieldPair a, FieldPair b) {
  return [a = std::move(a), b = std::move(b)](const Point& x) {
    const auto u = a(x);
    const auto v = b(x);
    return std::array<Jet, 2>{u[0] - v[0], u[1] - v[1]};
  };
}

Vector embed_in_fine_basis(const SplineBasis& coarse, const Vector& coarse_coeffs, const SplineBasis& fine) {
  const int n = coarse.size();
  const int dim = coarse.grid().dim();
  std::map<Index, int> fine_dof;
  for (int r = 0; r < fine.size(); ++r) {
    const auto& terms = fine.function(r).terms;
    if (terms.size() != 1 || fine.function(r).scale != 1.0)
      throw Error(ErrorKind::InvalidArgument, "fine basis must consist of plain weighted B-splines");
    fine_dof[terms.front().first] = r;
  }
  Vector out = Vector::Zero(2 * fine.size());
  for (int i = 0; i < 2; ++i) {
    std::vector<double> c(coarse_coeffs.data() + i * n, coarse_coeffs.data() + (i + 1) * n);
    const auto refined = refine_coefficients(coarse.bspline_coefficients(c), coarse.order(), dim);
    for (const auto& [k, d] : refined) {
      const auto it = fine_dof.find(k);
      if (it != fine_dof.end()) out[i * fine.size() + it->second] = d;
    }
  }
  return out;
}

}  // namespace webs
