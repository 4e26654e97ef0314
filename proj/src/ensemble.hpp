#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"
#include "grid.hpp"
#include "mollifier.hpp"
#include "parallel.hpp"
#include "vec.hpp"

namespace gradflow {

// Weighted particle set representing the density as sum_p w_p delta(x - x_p).
// Weights are strictly positive and fixed for the life of the ensemble; time
// stepping produces fresh position arrays and never touches the weights.
template <std::size_t D>
class ParticleEnsemble {
 public:
  ParticleEnsemble(std::vector<Vec<D>> positions, std::vector<double> weights)
      : positions_(std::move(positions)), weights_(std::move(weights)) {
    if (positions_.size() != weights_.size())
      throw InvalidArgumentError("ensemble: positions/weights size mismatch");
    if (positions_.empty()) throw EmptyEnsembleError("ensemble: no particles");
    for (std::size_t p = 0; p < positions_.size(); ++p) {
      if (!all_finite(positions_[p]))
        throw InvalidInputError("ensemble: non-finite position at particle " +
                                std::to_string(p));
      if (!(weights_[p] > 0.0) || !std::isfinite(weights_[p]))
        throw InvalidInputError("ensemble: non-positive weight at particle " +
                                std::to_string(p));
    }
  }

  std::size_t size() const { return positions_.size(); }
  static constexpr int dimension() { return D; }
  const std::vector<Vec<D>>& positions() const { return positions_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<Vec<D>> positions_;
  std::vector<double> weights_;
};

// Cell-mass initialization: one particle per cell center x_i with weight
// h^d f0(x_i).  Cells whose weight falls at or below weight_floor are
// dropped, so compactly supported data yields N < M^d particles.
template <std::size_t D, class Density>
ParticleEnsemble<D> init_from_density(Density&& f0, const QuadratureGrid<D>& grid,
                                      double weight_floor = 0.0) {
  if (weight_floor < 0.0 || !std::isfinite(weight_floor))
    throw InvalidArgumentError("init_from_density: weight_floor must be >= 0");
  const double cell_mass = grid.cell_volume();
  std::vector<Vec<D>> positions;
  std::vector<double> weights;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec<D> x = grid.center(i);
    const double f = f0(x);
    if (!std::isfinite(f) || f < 0.0)
      throw InvalidInputError("init_from_density: density negative or non-finite at cell " +
                              std::to_string(i));
    const double w = cell_mass * f;
    if (w > weight_floor) {
      positions.push_back(x);
      weights.push_back(w);
    }
  }
  if (positions.empty())
    throw EmptyEnsembleError("init_from_density: all cell weights at or below floor");
  return ParticleEnsemble<D>(std::move(positions), std::move(weights));
}

// Blob reconstruction f_eps(x) = sum_p w_p phi_eps(x - x_p) at query points.
template <std::size_t D>
std::vector<double> reconstruct_density(const std::vector<Vec<D>>& positions,
                                        const std::vector<double>& weights,
                                        double epsilon,
                                        const std::vector<Vec<D>>& points) {
  const Mollifier phi(epsilon);
  std::vector<double> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    double s = 0.0;
    for (std::size_t p = 0; p < positions.size(); ++p)
      s += weights[p] * phi.value<D>(points[i] - positions[p]);
    out[i] = s;
  });
  return out;
}

template <std::size_t D>
std::vector<double> reconstruct_density(const ParticleEnsemble<D>& ensemble,
                                        double epsilon,
                                        const std::vector<Vec<D>>& points) {
  return reconstruct_density(ensemble.positions(), ensemble.weights(), epsilon,
                             points);
}

}  // namespace gradflow
