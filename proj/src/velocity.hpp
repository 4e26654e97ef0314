#pragma once

#include <cstddef>
#include <vector>

#include "collision_kernel.hpp"
#include "errors.hpp"
#include "parallel.hpp"
#include "vec.hpp"

namespace gradflow {

// Velocity fields for the two model families.  `grad` is the per-mass
// gradient G_p = grad_{x_p} E / w_p produced by grad_energy.

// dX/dt = -W^{-1} grad E, i.e. v_p = -G_p.
template <std::size_t D>
std::vector<Vec<D>> velocity_aggdiff(const std::vector<Vec<D>>& grad) {
  std::vector<Vec<D>> v(grad.size());
  parallel_for(grad.size(), [&](std::size_t p) { v[p] = -grad[p]; });
  return v;
}

// v_p = -sum_q w_q A(x_p - x_q)(G_p - G_q), matrix-free.  The sum runs over
// unordered pairs with the antisymmetric contribution added to both sides,
// which zeroes the weighted velocity sum pair by pair.
template <std::size_t D>
std::vector<Vec<D>> velocity_landau(const CollisionKernel& kernel,
                                    const std::vector<Vec<D>>& positions,
                                    const std::vector<double>& weights,
                                    const std::vector<Vec<D>>& grad) {
  const std::size_t n = positions.size();
  if (weights.size() != n || grad.size() != n)
    throw InvalidArgumentError("velocity_landau: inconsistent lengths");
  const std::size_t npairs = pair_count(n);
  const std::size_t nblocks =
      npairs == 0 ? 0 : (npairs + kPairBlock - 1) / kPairBlock;
  std::vector<std::vector<Vec<D>>> buf(nblocks);
  for (auto& b : buf) b.assign(n, Vec<D>{});
  for_each_pair_block(n, [&](std::size_t b, std::size_t p, std::size_t q) {
    const Vec<D> k =
        kernel.apply<D>(positions[p] - positions[q], grad[p] - grad[q]);
    buf[b][p] -= weights[q] * k;
    buf[b][q] += weights[p] * k;  // A(-x) = A(x) and the difference flips sign
  });
  std::vector<Vec<D>> v(n, Vec<D>{});
  parallel_for(n, [&](std::size_t p) {
    for (std::size_t b = 0; b < nblocks; ++b) v[p] += buf[b][p];
  });
  return v;
}

}  // namespace gradflow
