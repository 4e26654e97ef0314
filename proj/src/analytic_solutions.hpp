#pragma once

#include <cmath>

#include "errors.hpp"
#include "vec.hpp"

namespace gradflow {

// Closed-form reference solutions used for initialization and error norms.

// Point-source solution of the 1D heat equation.
struct HeatKernel1D {
  double value(double t, double x) const {
    if (!(t > 0.0)) throw InvalidArgumentError("heat kernel: t must be > 0");
    return std::pow(4.0 * M_PI * t, -0.5) * std::exp(-x * x / (4.0 * t));
  }
};

// Self-similar Barenblatt profile of the 1D porous medium equation,
//   Psi(t,x) = t^(-alpha) (K - kappa (|x| / t^alpha)^2)_+^(1/(m-1)),
// alpha = 1/(m+1), kappa = alpha (m-1) / (2m).
struct Barenblatt1D {
  double m = 1.5;
  double K = 1.0;

  double alpha() const { return 1.0 / (m + 1.0); }
  double kappa() const { return alpha() * (m - 1.0) / (2.0 * m); }

  double value(double t, double x) const {
    if (!(t > 0.0)) throw InvalidArgumentError("barenblatt: t must be > 0");
    const double ta = std::pow(t, alpha());
    const double xi = std::abs(x) / ta;
    const double base = K - kappa() * xi * xi;
    if (base <= 0.0) return 0.0;
    return std::pow(base, 1.0 / (m - 1.0)) / ta;
  }

  // profile vanishes for |x| > t^alpha sqrt(K/kappa)
  double support_radius(double t) const {
    return std::pow(t, alpha()) * std::sqrt(K / kappa());
  }

  // total mass a(m) K^(1/(m-1) + 1/2); kept for reference and cross-checks,
  // initialization always uses the cell-mass rule
  double total_mass() const {
    const double a = std::sqrt(2.0 * M_PI * m / (alpha() * (m - 1.0))) *
                     std::exp(std::lgamma(m / (m - 1.0)) -
                              std::lgamma(m / (m - 1.0) + 0.5));
    return a * std::pow(K, 1.0 / (m - 1.0) + 0.5);
  }
};

// Gaussian solution of the 1D linear Fokker-Planck equation relaxing to the
// standard normal.
struct LinearFokkerPlanck1D {
  double value(double t, double x) const {
    if (!(t > 0.0)) throw InvalidArgumentError("linear fp: t must be > 0");
    const double s = 1.0 - std::exp(-2.0 * t);
    return std::pow(2.0 * M_PI * s, -0.5) * std::exp(-x * x / (2.0 * s));
  }
};

// BKW solution of the 2D Landau equation with Maxwell kernel C = 1/16,
//   R(t) = 1 - exp(-t/8)/2.
struct BkwSolution2D {
  double thermal_radius(double t) const { return 1.0 - std::exp(-t / 8.0) / 2.0; }

  double value(double t, const Vec<2>& x) const {
    if (t < 0.0) throw InvalidArgumentError("bkw: t must be >= 0");
    const double R = thermal_radius(t);
    const double r2 = norm_sq(x);
    return 1.0 / (2.0 * M_PI * R) * std::exp(-r2 / (2.0 * R)) *
           ((2.0 * R - 1.0) / R + (1.0 - R) / (2.0 * R * R) * r2);
  }
};

}  // namespace gradflow
