#pragma once

#include <cmath>

#include "errors.hpp"
#include "vec.hpp"

namespace gradflow {

// Collision kernel matrix A(x) = C |x|^gamma (|x|^2 I - x x^T), applied
// matrix-free.  A(x) is symmetric positive semi-definite with A(x) x = 0;
// A(0) is taken to be the zero matrix for every gamma, which removes the
// Coulomb singularity and lets pair sums include the diagonal term.
struct CollisionKernel {
  double strength;  // C
  double exponent;  // gamma

  CollisionKernel(double strength_, double exponent_)
      : strength(strength_), exponent(exponent_) {
    if (!(strength > 0.0) || !std::isfinite(strength))
      throw InvalidArgumentError("collision kernel: strength must be positive");
    if (!std::isfinite(exponent))
      throw InvalidArgumentError("collision kernel: exponent must be finite");
  }

  template <std::size_t D>
  Vec<D> apply(const Vec<D>& x, const Vec<D>& v) const {
    const double r2 = norm_sq(x);
    if (r2 == 0.0) return Vec<D>{};
    const double f =
        exponent == 0.0 ? strength : strength * std::pow(r2, 0.5 * exponent);
    const double xv = dot(x, v);
    Vec<D> out;
    for (std::size_t a = 0; a < D; ++a) out[a] = f * (r2 * v[a] - xv * x[a]);
    return out;
  }
};

inline CollisionKernel maxwell_kernel(double strength = 1.0 / 16.0) {
  return CollisionKernel(strength, 0.0);
}

inline CollisionKernel coulomb_kernel(double strength = 1.0 / 16.0) {
  return CollisionKernel(strength, -3.0);
}

}  // namespace gradflow
