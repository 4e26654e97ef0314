#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "energy_model.hpp"
#include "errors.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "vec.hpp"
#include "velocity.hpp"

namespace gradflow {

// Mean-value discrete gradient quadrature (Gauss-Legendre on [0,1]).
struct MeanValueConfig {
  int node_count = 4;
};

struct FixedPointConfig {
  double dt = 0.0;
  double tolerance = 1e-15;
  int max_iterations = 200;

  void validate() const {
    if (!(dt >= 0.0) || !std::isfinite(dt))
      throw InvalidArgumentError("fixed point: dt must be >= 0 and finite");
    if (!(tolerance > 0.0))
      throw InvalidArgumentError("fixed point: tolerance must be > 0");
    if (max_iterations < 1)
      throw InvalidArgumentError("fixed point: max_iterations must be >= 1");
  }
};

template <std::size_t D>
struct StepResult {
  std::vector<Vec<D>> positions;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  // mean-value gradient of the accepted sweep, reused by diagnostics
  std::vector<Vec<D>> mean_gradient;
};

// Gbar_p = int_0^1 G_p(X_old + s (X_new - X_old)) ds by Gauss-Legendre,
// one grad_energy evaluation per node.  Returned in per-mass layout.
template <std::size_t D>
std::vector<Vec<D>> mean_value_gradient(const EnergyModel<D>& model,
                                        const std::vector<double>& weights,
                                        const std::vector<Vec<D>>& x_old,
                                        const std::vector<Vec<D>>& x_new,
                                        const MeanValueConfig& cfg) {
  if (x_old.size() != x_new.size())
    throw InvalidArgumentError("mean_value_gradient: endpoint size mismatch");
  if (x_old == x_new) return grad_energy(model, x_old, weights);
  const GaussLegendre01 rule = gauss_legendre_01(cfg.node_count);
  const std::size_t n = x_old.size();
  std::vector<Vec<D>> acc(n, Vec<D>{});
  std::vector<Vec<D>> interp(n);
  for (int k = 0; k < cfg.node_count; ++k) {
    const double s = rule.nodes[k];
    parallel_for(n, [&](std::size_t p) {
      interp[p] = x_old[p] + s * (x_new[p] - x_old[p]);
    });
    const auto g = grad_energy(model, interp, weights);
    const double w = rule.weights[k];
    parallel_for(n, [&](std::size_t p) { acc[p] += w * g[p]; });
  }
  return acc;
}

namespace detail {

// relative change between consecutive iterates, scale-floored at 1
template <std::size_t D>
double relative_change(const std::vector<Vec<D>>& next,
                       const std::vector<Vec<D>>& prev) {
  return max_abs_diff(next, prev) / std::max(1.0, max_abs(prev));
}

// Picard loop for X = X^n + dt * v(X): `update` maps the current iterate to
// the next one; `initial` is the forward-Euler predictor.
template <std::size_t D, class Update>
StepResult<D> fixed_point_solve(std::vector<Vec<D>> initial,
                                const FixedPointConfig& cfg, Update&& update) {
  StepResult<D> result;
  std::vector<double> history;
  std::vector<Vec<D>> prev = std::move(initial);
  for (int k = 1; k <= cfg.max_iterations; ++k) {
    auto [next, gbar] = update(prev);
    const double r = relative_change<D>(next, prev);
    history.push_back(r);
    prev = std::move(next);
    if (r <= cfg.tolerance) {
      result.positions = std::move(prev);
      result.iterations = k;
      result.residual = r;
      result.converged = true;
      result.mean_gradient = std::move(gbar);
      return result;
    }
  }
  const std::string what =
      "fixed point: no convergence after " + std::to_string(cfg.max_iterations) +
      " iterations (last residual " + std::to_string(history.back()) + ")";
  throw NonConvergenceError(what, std::move(history));
}

}  // namespace detail

// Implicit discrete-gradient step for aggregation-diffusion,
//   X^{n+1} = X^n - dt * Gbar(X^{n+1}, X^n),
// solved by fixed-point iteration from a forward-Euler guess.
template <std::size_t D>
StepResult<D> step_aggdiff(const EnergyModel<D>& model,
                           const std::vector<double>& weights,
                           const std::vector<Vec<D>>& x_n,
                           const FixedPointConfig& fp, const MeanValueConfig& mv) {
  fp.validate();
  const std::size_t n = x_n.size();
  const auto g0 = grad_energy(model, x_n, weights);
  std::vector<Vec<D>> guess(n);
  parallel_for(n, [&](std::size_t p) { guess[p] = x_n[p] - fp.dt * g0[p]; });
  return detail::fixed_point_solve<D>(
      std::move(guess), fp, [&](const std::vector<Vec<D>>& xk) {
        auto gbar = mean_value_gradient(model, weights, x_n, xk, mv);
        std::vector<Vec<D>> next(n);
        parallel_for(n, [&](std::size_t p) { next[p] = x_n[p] - fp.dt * gbar[p]; });
        return std::make_pair(std::move(next), std::move(gbar));
      });
}

// Implicit discrete-gradient step for the Landau equation,
//   x_p^{n+1} = x_p^n - dt sum_q w_q A(m_p - m_q)(Gbar_p - Gbar_q),
// with m the midpoints of the step.  Midpoints and Gbar are refreshed from
// the current iterate each sweep; at convergence both agree with the
// converged endpoints to solver tolerance.
template <std::size_t D>
StepResult<D> step_landau(const EnergyModel<D>& model,
                          const std::vector<double>& weights,
                          const std::vector<Vec<D>>& x_n,
                          const FixedPointConfig& fp, const MeanValueConfig& mv) {
  fp.validate();
  const CollisionKernel& kernel = model.kernel();
  const std::size_t n = x_n.size();
  const auto g0 = grad_energy(model, x_n, weights);
  const auto v0 = velocity_landau(kernel, x_n, weights, g0);
  std::vector<Vec<D>> guess(n);
  parallel_for(n, [&](std::size_t p) { guess[p] = x_n[p] + fp.dt * v0[p]; });
  std::vector<Vec<D>> mid(n);
  return detail::fixed_point_solve<D>(
      std::move(guess), fp, [&](const std::vector<Vec<D>>& xk) {
        auto gbar = mean_value_gradient(model, weights, x_n, xk, mv);
        parallel_for(n, [&](std::size_t p) { mid[p] = 0.5 * (x_n[p] + xk[p]); });
        const auto v = velocity_landau(kernel, mid, weights, gbar);
        std::vector<Vec<D>> next(n);
        parallel_for(n, [&](std::size_t p) { next[p] = x_n[p] + fp.dt * v[p]; });
        return std::make_pair(std::move(next), std::move(gbar));
      });
}

// Same midpoint iteration with a frozen gradient field.  The conservation of
// momentum and kinetic energy depends only on the pair structure and the
// midpoint evaluation, not on where the gradient came from.
template <std::size_t D>
StepResult<D> step_landau_fixed_gradient(const CollisionKernel& kernel,
                                         const std::vector<double>& weights,
                                         const std::vector<Vec<D>>& x_n,
                                         const std::vector<Vec<D>>& grad,
                                         const FixedPointConfig& fp) {
  fp.validate();
  const std::size_t n = x_n.size();
  const auto v0 = velocity_landau(kernel, x_n, weights, grad);
  std::vector<Vec<D>> guess(n);
  parallel_for(n, [&](std::size_t p) { guess[p] = x_n[p] + fp.dt * v0[p]; });
  std::vector<Vec<D>> mid(n);
  return detail::fixed_point_solve<D>(
      std::move(guess), fp, [&](const std::vector<Vec<D>>& xk) {
        parallel_for(n, [&](std::size_t p) { mid[p] = 0.5 * (x_n[p] + xk[p]); });
        const auto v = velocity_landau(kernel, mid, weights, grad);
        std::vector<Vec<D>> next(n);
        parallel_for(n, [&](std::size_t p) { next[p] = x_n[p] + fp.dt * v[p]; });
        return std::make_pair(std::move(next), grad);
      });
}

}  // namespace gradflow
