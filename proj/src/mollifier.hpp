#pragma once

#include <cmath>

#include "errors.hpp"
#include "vec.hpp"

namespace gradflow {

// Gaussian mollifier of variance epsilon,
//   phi_eps(x) = (2 pi eps)^(-d/2) exp(-|x|^2 / (2 eps)).
// An optional cutoff radius (in units of sqrt(eps)) zeroes the tail for
// speed; it is disabled by default, and conservation tests run untruncated.
class Mollifier {
 public:
  explicit Mollifier(double epsilon, double cutoff_radius = 0.0)
      : epsilon_(epsilon), cutoff_(cutoff_radius) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
      throw InvalidArgumentError("mollifier: epsilon must be positive and finite");
    if (cutoff_ < 0.0)
      throw InvalidArgumentError("mollifier: cutoff radius must be >= 0");
    cutoff_sq_ = cutoff_ > 0.0 ? cutoff_ * cutoff_ * epsilon_ : 0.0;
  }

  double epsilon() const { return epsilon_; }
  bool truncated() const { return cutoff_ > 0.0; }
  double cutoff_radius() const { return cutoff_; }

  template <std::size_t D>
  double prefactor() const {
    return std::pow(2.0 * M_PI * epsilon_, -0.5 * D);
  }

  template <std::size_t D>
  double log_prefactor() const {
    return -0.5 * D * std::log(2.0 * M_PI * epsilon_);
  }

  // single-axis factor exp(-dx^2 / (2 eps)); the d-dimensional value is the
  // product of axis factors times the prefactor
  double axis_factor(double dx) const {
    return std::exp(-dx * dx / (2.0 * epsilon_));
  }

  template <std::size_t D>
  double value(const Vec<D>& x) const {
    const double r2 = norm_sq(x);
    if (cutoff_sq_ > 0.0 && r2 > cutoff_sq_) return 0.0;
    return prefactor<D>() * std::exp(-r2 / (2.0 * epsilon_));
  }

  // grad phi_eps(x) = -(x / eps) phi_eps(x); exactly zero at x = 0
  template <std::size_t D>
  Vec<D> gradient(const Vec<D>& x) const {
    const double v = value<D>(x);
    Vec<D> g;
    for (std::size_t a = 0; a < D; ++a) g[a] = -(x[a] / epsilon_) * v;
    return g;
  }

 private:
  double epsilon_;
  double cutoff_;
  double cutoff_sq_;
};

// Regularization scale from the cell size, eps = coeff * h^power.
inline double epsilon_from_cell_size(double h, double coeff = 0.64,
                                     double power = 1.98) {
  return coeff * std::pow(h, power);
}

}  // namespace gradflow
