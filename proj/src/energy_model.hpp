#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "collision_kernel.hpp"
#include "ensemble.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "internal_energy.hpp"
#include "mollifier.hpp"
#include "parallel.hpp"
#include "potentials.hpp"
#include "quadrature.hpp"
#include "vec.hpp"

namespace gradflow {

// Regularized energy for either model family.  The aggregation-diffusion
// variant carries H (optional), V and W; the Landau variant carries the
// collision kernel and always uses the log-entropy H.  Field integrals (the
// h^eps field and the internal-energy term) are taken over this model's
// quadrature grid with the midpoint rule.
template <std::size_t D>
class EnergyModel {
 public:
  static EnergyModel aggregation_diffusion(
      std::optional<InternalEnergy> internal, std::optional<Potential<D>> external,
      std::optional<Potential<D>> interaction, Mollifier mollifier,
      QuadratureGrid<D> quadrature) {
    EnergyModel m(std::move(mollifier), std::move(quadrature));
    m.internal_ = internal;
    m.external_ = std::move(external);
    m.interaction_ = std::move(interaction);
    return m;
  }

  static EnergyModel landau(CollisionKernel kernel, Mollifier mollifier,
                            QuadratureGrid<D> quadrature) {
    EnergyModel m(std::move(mollifier), std::move(quadrature));
    m.kernel_ = kernel;
    m.internal_ = InternalEnergy::log_entropy();
    return m;
  }

  bool is_landau() const { return kernel_.has_value(); }
  const std::optional<InternalEnergy>& internal() const { return internal_; }
  const std::optional<Potential<D>>& external() const { return external_; }
  const std::optional<Potential<D>>& interaction() const { return interaction_; }

  const CollisionKernel& kernel() const {
    if (!kernel_) throw InvalidArgumentError("energy model: no collision kernel");
    return *kernel_;
  }

  const Mollifier& mollifier() const { return mollifier_; }
  const QuadratureGrid<D>& quadrature() const { return quadrature_; }

 private:
  EnergyModel(Mollifier mollifier, QuadratureGrid<D> quadrature)
      : mollifier_(std::move(mollifier)), quadrature_(std::move(quadrature)) {}

  std::optional<InternalEnergy> internal_;
  std::optional<Potential<D>> external_;
  std::optional<Potential<D>> interaction_;
  std::optional<CollisionKernel> kernel_;
  Mollifier mollifier_;
  QuadratureGrid<D> quadrature_;
};

namespace detail {

// Per-point, per-axis Gaussian factors against the shared axis centers.
// Tensor structure of the grid turns every mollified field sum into products
// of these 1D tables, cutting the exp count from O(n * M^d) to O(n * d * M).
template <std::size_t D>
struct AxisTables {
  int m = 0;
  std::size_t n = 0;
  std::vector<double> u;  // exp factors, u[(p*D + a)*m + j]
  std::vector<double> v;  // (x_p[a] - c_j) * u, built when with_moment

  const double* u_row(std::size_t p, int axis) const {
    return u.data() + (p * D + axis) * m;
  }
  const double* v_row(std::size_t p, int axis) const {
    return v.data() + (p * D + axis) * m;
  }
};

template <std::size_t D>
AxisTables<D> build_axis_tables(const std::vector<Vec<D>>& points,
                                const QuadratureGrid<D>& grid,
                                const Mollifier& phi, bool with_moment) {
  AxisTables<D> t;
  t.m = grid.cells_per_dim();
  t.n = points.size();
  t.u.resize(t.n * D * t.m);
  if (with_moment) t.v.resize(t.n * D * t.m);
  const std::vector<double> centers = grid.axis_centers();
  const bool truncated = phi.truncated();
  const double cut = truncated ? phi.cutoff_radius() * std::sqrt(phi.epsilon()) : 0.0;
  parallel_for(t.n, [&](std::size_t p) {
    for (std::size_t a = 0; a < D; ++a) {
      double* u = t.u.data() + (p * D + a) * t.m;
      double* v = with_moment ? t.v.data() + (p * D + a) * t.m : nullptr;
      const double x = points[p][a];
      for (int j = 0; j < t.m; ++j) {
        const double dx = x - centers[j];
        double e = phi.axis_factor(dx);
        if (truncated && std::abs(dx) > cut) e = 0.0;
        u[j] = e;
        if (v) v[j] = dx * e;
      }
    }
  });
  return t;
}

// Mollified density at every cell center, g_i = sum_q w_q phi_eps(x_i - x_q).
template <std::size_t D>
std::vector<double> density_on_grid(const AxisTables<D>& tables,
                                    const std::vector<double>& weights,
                                    const QuadratureGrid<D>& grid,
                                    const Mollifier& phi) {
  const int m = grid.cells_per_dim();
  const double pref = phi.prefactor<D>();
  std::vector<double> g(grid.size(), 0.0);
  if constexpr (D == 1) {
    parallel_for(static_cast<std::size_t>(m), [&](std::size_t j) {
      double s = 0.0;
      for (std::size_t q = 0; q < tables.n; ++q)
        s += weights[q] * tables.u_row(q, 0)[j];
      g[j] = pref * s;
    });
  } else {
    parallel_for(static_cast<std::size_t>(m), [&](std::size_t j1) {
      double* row = g.data() + j1 * m;
      for (std::size_t q = 0; q < tables.n; ++q) {
        const double cx = weights[q] * tables.u_row(q, 0)[j1];
        if (cx == 0.0) continue;
        const double* uy = tables.u_row(q, 1);
        for (int j2 = 0; j2 < m; ++j2) row[j2] += cx * uy[j2];
      }
      for (int j2 = 0; j2 < m; ++j2) row[j2] *= pref;
    });
  }
  return g;
}

// log g_i for cells where the direct sum underflowed to zero
template <std::size_t D>
double log_density_lse(const Vec<D>& cell, const std::vector<Vec<D>>& positions,
                       const std::vector<double>& weights, const Mollifier& phi) {
  const double inv2eps = 1.0 / (2.0 * phi.epsilon());
  double emax = -std::numeric_limits<double>::infinity();
  for (std::size_t q = 0; q < positions.size(); ++q) {
    const double e = std::log(weights[q]) - norm_sq(cell - positions[q]) * inv2eps;
    if (e > emax) emax = e;
  }
  double s = 0.0;
  for (std::size_t q = 0; q < positions.size(); ++q) {
    const double e = std::log(weights[q]) - norm_sq(cell - positions[q]) * inv2eps;
    s += std::exp(e - emax);
  }
  return emax + std::log(s) + phi.log_prefactor<D>();
}

// Per-cell factor of the h field: log g (log-sum-exp fallback when the direct
// sum underflows) or g^(m-1).
template <std::size_t D>
std::vector<double> cell_field_weights(const InternalEnergy& internal,
                                       const std::vector<double>& density,
                                       const std::vector<Vec<D>>& positions,
                                       const std::vector<double>& weights,
                                       const QuadratureGrid<D>& grid,
                                       const Mollifier& phi) {
  std::vector<double> L(density.size());
  if (internal.is_log_entropy()) {
    parallel_for(density.size(), [&](std::size_t i) {
      const double g = density[i];
      L[i] = g > 0.0 ? std::log(g)
                     : log_density_lse<D>(grid.center(i), positions, weights, phi);
    });
    for (std::size_t i = 0; i < L.size(); ++i)
      if (std::isnan(L[i]) || L[i] == std::numeric_limits<double>::infinity())
        throw NumericalDomainError(
            "h_eps: log of nonpositive density at grid cell " + std::to_string(i));
  } else {
    parallel_for(density.size(), [&](std::size_t i) {
      L[i] = internal.field_weight_from_density(density[i]);
    });
  }
  return L;
}

// Midpoint-rule field sum_i h^d grad phi_eps(x - x_i) L_i at each eval point.
template <std::size_t D>
std::vector<Vec<D>> h_field(const AxisTables<D>& eval,
                            const std::vector<double>& L,
                            const QuadratureGrid<D>& grid, const Mollifier& phi,
                            double scale) {
  const int m = grid.cells_per_dim();
  // grad phi = -(dx/eps) phi; cell volume and prefactor folded into `k`
  const double k = -scale * grid.cell_volume() * phi.prefactor<D>() / phi.epsilon();
  std::vector<Vec<D>> out(eval.n);
  if constexpr (D == 1) {
    parallel_for(eval.n, [&](std::size_t p) {
      const double* v = eval.v_row(p, 0);
      double s = 0.0;
      for (int j = 0; j < m; ++j) s += v[j] * L[j];
      out[p][0] = k * s;
    });
  } else {
    parallel_for(eval.n, [&](std::size_t p) {
      const double* ux = eval.u_row(p, 0);
      const double* vx = eval.v_row(p, 0);
      const double* uy = eval.u_row(p, 1);
      const double* vy = eval.v_row(p, 1);
      double sx = 0.0, sy = 0.0;
      for (int j1 = 0; j1 < m; ++j1) {
        const double* Lrow = L.data() + static_cast<std::size_t>(j1) * m;
        double su = 0.0, sv = 0.0;
        for (int j2 = 0; j2 < m; ++j2) {
          su += uy[j2] * Lrow[j2];
          sv += vy[j2] * Lrow[j2];
        }
        sx += vx[j1] * su;
        sy += ux[j1] * sv;
      }
      out[p][0] = k * sx;
      out[p][1] = k * sy;
    });
  }
  return out;
}

}  // namespace detail

// h^eps field of the regularized internal energy, evaluated with the model's
// grid midpoint rule:
//   log entropy:  sum_i h^d grad phi_eps(x - x_i) log g_i
//   power law:    m/(m-1) sum_i h^d grad phi_eps(x - x_i) g_i^(m-1)
// with g_i the mollified particle density on the grid.
template <std::size_t D>
std::vector<Vec<D>> h_eps(const EnergyModel<D>& model,
                          const std::vector<Vec<D>>& positions,
                          const std::vector<double>& weights,
                          const std::vector<Vec<D>>& eval_positions) {
  if (positions.empty()) throw EmptyEnsembleError("h_eps: empty ensemble");
  if (!model.internal()) throw InvalidArgumentError("h_eps: model has no internal energy");
  const auto& grid = model.quadrature();
  const auto& phi = model.mollifier();
  const auto particle_tables = detail::build_axis_tables(positions, grid, phi, false);
  const auto density = detail::density_on_grid(particle_tables, weights, grid, phi);
  const auto L = detail::cell_field_weights<D>(*model.internal(), density, positions,
                                               weights, grid, phi);
  const auto eval_tables = detail::build_axis_tables(eval_positions, grid, phi, true);
  return detail::h_field(eval_tables, L, grid, phi,
                         model.internal()->field_prefactor());
}

// Per-particle gradient of the variational derivative,
//   G_p = grad (dE/df)[f^N](x_p)
//       = h^eps(x_p) + grad V(x_p) + sum_q w_q grad W(x_p - x_q)
// (Landau: G_p = h^eps(x_p)).  This equals (1/w_p) grad_{x_p} E of the
// discretized energy; see energy_value for the matching discrete energy.
template <std::size_t D>
std::vector<Vec<D>> grad_energy(const EnergyModel<D>& model,
                                const std::vector<Vec<D>>& positions,
                                const std::vector<double>& weights) {
  if (positions.empty()) throw EmptyEnsembleError("grad_energy: empty ensemble");
  const std::size_t n = positions.size();
  std::vector<Vec<D>> g;
  if (model.internal())
    g = h_eps(model, positions, weights, positions);
  else
    g.assign(n, Vec<D>{});
  if (model.external()) {
    const auto& V = *model.external();
    parallel_for(n, [&](std::size_t p) { g[p] += V.gradient(positions[p]); });
  }
  if (model.interaction()) {
    const auto& W = *model.interaction();
    const std::size_t npairs = pair_count(n);
    const std::size_t nblocks = npairs == 0 ? 0 : (npairs + kPairBlock - 1) / kPairBlock;
    std::vector<std::vector<Vec<D>>> buf(nblocks);
    for (auto& b : buf) b.assign(n, Vec<D>{});
    for_each_pair_block(n, [&](std::size_t b, std::size_t p, std::size_t q) {
      const Vec<D> dw = W.gradient(positions[p] - positions[q]);
      buf[b][p] += weights[q] * dw;
      buf[b][q] -= weights[p] * dw;  // grad W is odd
    });
    parallel_for(n, [&](std::size_t p) {
      for (std::size_t b = 0; b < nblocks; ++b) g[p] += buf[b][p];
    });
  }
  return g;
}

// Discretized energy E^eps(x_1..x_N):
//   sum_i h^d H(g_i) + sum_p w_p V(x_p) + 1/2 sum_{p,q} w_p w_q W(x_p - x_q)
// (Landau keeps only the entropy term).
template <std::size_t D>
double energy_value(const EnergyModel<D>& model,
                    const std::vector<Vec<D>>& positions,
                    const std::vector<double>& weights) {
  if (positions.empty()) throw EmptyEnsembleError("energy_value: empty ensemble");
  const std::size_t n = positions.size();
  double total = 0.0;
  if (model.internal()) {
    const auto& grid = model.quadrature();
    const auto& phi = model.mollifier();
    const auto tables = detail::build_axis_tables(positions, grid, phi, false);
    const auto density = detail::density_on_grid(tables, weights, grid, phi);
    const auto& internal = *model.internal();
    const double cell = grid.cell_volume();
    const double sum = chunked_reduce(density.size(), 0.0,
                                      [&](double& acc, std::size_t i) {
                                        acc += internal.density_energy(density[i]);
                                      });
    if (std::isnan(sum))
      throw NumericalDomainError("energy_value: internal energy is NaN");
    total += cell * sum;
  }
  if (model.external()) {
    const auto& V = *model.external();
    total += chunked_reduce(n, 0.0, [&](double& acc, std::size_t p) {
      acc += weights[p] * V.value(positions[p]);
    });
  }
  if (model.interaction()) {
    const auto& W = *model.interaction();
    const double w0 = W.value(Vec<D>{});
    double diag = 0.0;
    if (w0 != 0.0)
      diag = 0.5 * w0 * chunked_reduce(n, 0.0, [&](double& acc, std::size_t p) {
               acc += weights[p] * weights[p];
             });
    total += diag + pair_reduce(n, [&](std::size_t p, std::size_t q) {
               return weights[p] * weights[q] * W.value(positions[p] - positions[q]);
             });
  }
  return total;
}

// Ensemble-based conveniences.
template <std::size_t D>
std::vector<Vec<D>> grad_energy(const EnergyModel<D>& model,
                                const ParticleEnsemble<D>& ensemble) {
  return grad_energy(model, ensemble.positions(), ensemble.weights());
}

template <std::size_t D>
double energy_value(const EnergyModel<D>& model, const ParticleEnsemble<D>& ensemble) {
  return energy_value(model, ensemble.positions(), ensemble.weights());
}

template <std::size_t D>
std::vector<Vec<D>> h_eps(const EnergyModel<D>& model, const ParticleEnsemble<D>& ensemble,
                          const std::vector<Vec<D>>& eval_positions) {
  return h_eps(model, ensemble.positions(), ensemble.weights(), eval_positions);
}

}  // namespace gradflow
