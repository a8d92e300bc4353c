#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace webs {

/// Points, vectors and multi-indices carry two slots; one-dimensional
/// problems leave the second slot at zero.
using Point = std::array<double, 2>;
using Vec = std::array<double, 2>;
using Index = std::array<int, 2>;

/// Symmetric 2x2 matrix (Hessians, diffusion tensors).
struct SymMat2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  Vec apply(const Vec& v) const { return {xx * v[0] + xy * v[1], xy * v[0] + yy * v[1]}; }
};

/// Value, gradient and Hessian of a scalar field at one point.
struct Jet {
  double value = 0.0;
  Vec grad{0.0, 0.0};
  SymMat2 hess{};
};

struct Box {
  Point lo{0.0, 0.0};
  Point hi{0.0, 0.0};
};

inline double dot(const Vec& a, const Vec& b) { return a[0] * b[0] + a[1] * b[1]; }

enum class ErrorKind {
  InvalidArgument,
  DegenerateDomain,
  NoInnerArray,
  UnsupportedBoundary,
  UnparameterizedBoundary,
  EmptyBasis,
  QuadratureFailure,
  DimensionMismatch,
  NotSymmetric,
  NotPositiveDefinite,
  SingularSystem,
  ProjectionSingular,
  SecondDerivativeUnavailable,
  NonEllipticDiffusion,
  UnknownKind,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace webs
