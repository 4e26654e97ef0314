#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "collision_kernel.hpp"
#include "ensemble.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "parallel.hpp"
#include "vec.hpp"

namespace gradflow {

// m = sum w_p
template <std::size_t D>
double total_mass(const std::vector<double>& weights) {
  return chunked_reduce(weights.size(), 0.0,
                        [&](double& acc, std::size_t p) { acc += weights[p]; });
}

// P = sum w_p x_p
template <std::size_t D>
Vec<D> momentum(const std::vector<Vec<D>>& positions,
                const std::vector<double>& weights) {
  return chunked_reduce(positions.size(), Vec<D>{},
                        [&](Vec<D>& acc, std::size_t p) {
                          acc += weights[p] * positions[p];
                        });
}

// K = 1/2 sum w_p |x_p|^2
template <std::size_t D>
double kinetic_energy(const std::vector<Vec<D>>& positions,
                      const std::vector<double>& weights) {
  return 0.5 * chunked_reduce(positions.size(), 0.0,
                              [&](double& acc, std::size_t p) {
                                acc += weights[p] * norm_sq(positions[p]);
                              });
}

// Discrete Fisher information sum_p |w_p Gbar_p|^2 / w_p = sum_p w_p |Gbar_p|^2
// with Gbar the step's mean-value gradient in per-mass layout.
template <std::size_t D>
double fisher_information(const std::vector<double>& weights,
                          const std::vector<Vec<D>>& mean_gradient) {
  return chunked_reduce(weights.size(), 0.0, [&](double& acc, std::size_t p) {
    acc += weights[p] * norm_sq(mean_gradient[p]);
  });
}

// Entropy dissipation rate of a Landau step, returned as the nonnegative
// quadratic form
//   D = 1/2 sum_{p,q} w_p w_q (Gbar_p - Gbar_q)^T A(mid_p - mid_q)(Gbar_p - Gbar_q).
template <std::size_t D>
double dissipation_rate(const CollisionKernel& kernel,
                        const std::vector<Vec<D>>& midpoints,
                        const std::vector<double>& weights,
                        const std::vector<Vec<D>>& mean_gradient) {
  return pair_reduce(midpoints.size(), [&](std::size_t p, std::size_t q) {
    const Vec<D> dg = mean_gradient[p] - mean_gradient[q];
    const Vec<D> adg = kernel.apply<D>(midpoints[p] - midpoints[q], dg);
    return weights[p] * weights[q] * dot(dg, adg);
  });
}

struct ErrorNorms {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

// Norms of f^N_eps - f on the initialization grid:
//   L1 = sum h^d |.|,  L2 = (sum h^d |.|^2)^(1/2),  Linf = max.
template <std::size_t D>
ErrorNorms error_norms(const std::vector<Vec<D>>& positions,
                       const std::vector<double>& weights, double epsilon,
                       const std::function<double(const Vec<D>&)>& exact,
                       const QuadratureGrid<D>& grid) {
  std::vector<Vec<D>> centers(grid.size());
  for (std::size_t i = 0; i < centers.size(); ++i) centers[i] = grid.center(i);
  const auto blob = reconstruct_density(positions, weights, epsilon, centers);
  struct Acc {
    double l1 = 0.0, l2 = 0.0, linf = 0.0;
    Acc& operator+=(const Acc& o) {
      l1 += o.l1;
      l2 += o.l2;
      linf = std::max(linf, o.linf);
      return *this;
    }
  };
  const Acc acc = chunked_reduce(centers.size(), Acc{}, [&](Acc& a, std::size_t i) {
    const double d = std::abs(blob[i] - exact(centers[i]));
    a.l1 += d;
    a.l2 += d * d;
    a.linf = std::max(a.linf, d);
  });
  const double cell = grid.cell_volume();
  return ErrorNorms{cell * acc.l1, std::sqrt(cell * acc.l2), acc.linf};
}

// Least-squares slope of log(error) against log(h).
inline double convergence_order(const std::vector<double>& h_values,
                                const std::vector<double>& error_values) {
  if (h_values.size() != error_values.size() || h_values.size() < 2)
    throw InvalidArgumentError("convergence_order: need >= 2 (h, error) pairs");
  const std::size_t n = h_values.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(h_values[i] > 0.0) || !(error_values[i] > 0.0))
      throw InvalidArgumentError("convergence_order: values must be positive");
    const double x = std::log(h_values[i]);
    const double y = std::log(error_values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// One row of the run's time series.
template <std::size_t D>
struct DiagnosticsRecord {
  long step = 0;
  double time = 0.0;
  double mass = 0.0;
  Vec<D> momentum{};
  double kinetic_energy = 0.0;
  double energy = 0.0;
  std::optional<double> fisher;
  std::optional<double> dissipation;
  int solver_iterations = 0;
};

}  // namespace gradflow
