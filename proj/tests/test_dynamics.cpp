#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "analytic_solutions.hpp"
#include "energy_model.hpp"
#include "oracles.hpp"
#include "velocity.hpp"

using namespace gradflow;

namespace {

struct RandomState {
  std::vector<Vec<2>> positions;
  std::vector<double> weights;
  std::vector<Vec<2>> grad;
};

RandomState random_state(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(-2.0, 2.0);
  std::uniform_real_distribution<double> uw(0.05, 1.0);
  RandomState s;
  s.positions.resize(n);
  s.weights.resize(n);
  s.grad.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.positions[i] = {ux(rng), ux(rng)};
    s.weights[i] = uw(rng);
    s.grad[i] = {ux(rng), ux(rng)};
  }
  return s;
}

}  // namespace

TEST_CASE("aggregation-diffusion velocity negates the gradient") {
  const std::vector<Vec<1>> g{{0.0}, {1.5}, {-2.0}};
  const auto v = velocity_aggdiff(g);
  CHECK(v[0][0] == 0.0);
  CHECK(v[1][0] == -1.5);
  CHECK(v[2][0] == 2.0);
}

TEST_CASE("quadratic confinement contracts toward the origin") {
  const QuadratureGrid<1> grid(5.0, 16);
  const Mollifier phi(0.1);
  const auto model = EnergyModel<1>::aggregation_diffusion(
      std::nullopt, quadratic_potential<1>(), std::nullopt, phi, grid);
  const std::vector<Vec<1>> pos{{-1.0}, {0.25}, {3.0}};
  const std::vector<double> w{0.3, 0.3, 0.4};
  const auto v = velocity_aggdiff(grad_energy(model, pos, w));
  for (std::size_t p = 0; p < pos.size(); ++p) CHECK(v[p][0] == -pos[p][0]);
}

TEST_CASE("single particle feels no collisions") {
  const auto v = velocity_landau<2>(maxwell_kernel(), {{0.4, -0.2}}, {1.0},
                                    {{3.0, 1.0}});
  CHECK(v[0][0] == 0.0);
  CHECK(v[0][1] == 0.0);
}

TEST_CASE("uniform gradient field produces no collisional motion") {
  auto s = random_state(12, 2024);
  for (auto& g : s.grad) g = Vec<2>{0.7, -0.3};
  const auto v = velocity_landau(maxwell_kernel(), s.positions, s.weights, s.grad);
  for (const auto& vp : v) {
    CHECK(vp[0] == 0.0);
    CHECK(vp[1] == 0.0);
  }
}

TEST_CASE("pair operator matches the assembled matrix") {
  for (unsigned seed = 0; seed < 100; ++seed) {
    const std::size_t n = 2 + seed % 15;
    const auto s = random_state(n, 1000 + seed);
    const CollisionKernel kernel = seed % 2 == 0 ? maxwell_kernel() : coulomb_kernel();
    const auto fast = velocity_landau(kernel, s.positions, s.weights, s.grad);
    const auto dense = oracles::dense_landau_velocity<2>(kernel, s.positions,
                                                         s.weights, s.grad);
    double scale = 0.0;
    for (const auto& v : dense) scale = std::max(scale, max_abs(v));
    for (std::size_t p = 0; p < n; ++p)
      CHECK(max_abs(fast[p] - dense[p]) <= 1e-12 * scale);
  }
}

TEST_CASE("dense three-particle cross-check at fixed values") {
  const auto s = random_state(3, 7);
  const auto fast = velocity_landau(maxwell_kernel(), s.positions, s.weights, s.grad);
  const auto dense =
      oracles::dense_landau_velocity<2>(maxwell_kernel(), s.positions, s.weights, s.grad);
  for (std::size_t p = 0; p < 3; ++p)
    CHECK(max_abs(fast[p] - dense[p]) <=
          1e-13 * std::max(1.0, max_abs(dense[p])));
}

TEST_CASE("collisional velocities annihilate momentum and kinetic energy") {
  for (unsigned seed = 0; seed < 20; ++seed) {
    const auto s = random_state(40, 500 + seed);
    const auto v = velocity_landau(maxwell_kernel(), s.positions, s.weights, s.grad);
    Vec<2> momentum{};
    double kinetic = 0.0, pscale = 0.0, kscale = 0.0;
    for (std::size_t p = 0; p < v.size(); ++p) {
      momentum += s.weights[p] * v[p];
      kinetic += s.weights[p] * dot(s.positions[p], v[p]);
      pscale += s.weights[p] * norm(v[p]);
      kscale += s.weights[p] * norm(s.positions[p]) * norm(v[p]);
    }
    CHECK(max_abs(momentum) <= 1e-12 * pscale);
    CHECK(std::abs(kinetic) <= 1e-12 * kscale);
  }
}

TEST_CASE("both velocity fields dissipate the energy pairing") {
  for (unsigned seed = 0; seed < 20; ++seed) {
    const auto s = random_state(30, 900 + seed);
    const auto v = velocity_landau(coulomb_kernel(), s.positions, s.weights, s.grad);
    double dissip = 0.0, scale = 0.0;
    for (std::size_t p = 0; p < v.size(); ++p) {
      dissip += s.weights[p] * dot(s.grad[p], v[p]);
      scale += s.weights[p] * norm(s.grad[p]) * norm(v[p]);
    }
    CHECK(dissip <= 1e-12 * scale);

    const auto va = velocity_aggdiff(s.grad);
    double da = 0.0;
    for (std::size_t p = 0; p < va.size(); ++p)
      da += s.weights[p] * dot(s.grad[p], va[p]);
    CHECK(da <= 0.0);
  }
}

TEST_CASE("permuting particles permutes velocities") {
  const auto s = random_state(25, 77);
  const auto v = velocity_landau(maxwell_kernel(), s.positions, s.weights, s.grad);
  std::vector<std::size_t> perm(s.positions.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(123);
  std::shuffle(perm.begin(), perm.end(), rng);
  RandomState t;
  t.positions.resize(perm.size());
  t.weights.resize(perm.size());
  t.grad.resize(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    t.positions[i] = s.positions[perm[i]];
    t.weights[i] = s.weights[perm[i]];
    t.grad[i] = s.grad[perm[i]];
  }
  const auto vp = velocity_landau(maxwell_kernel(), t.positions, t.weights, t.grad);
  double scale = 0.0;
  for (const auto& x : v) scale = std::max(scale, max_abs(x));
  for (std::size_t i = 0; i < perm.size(); ++i)
    CHECK(max_abs(vp[i] - v[perm[i]]) <= 1e-13 * scale);
}

TEST_CASE("velocity of the heat flow matches the dense aggregation route") {
  const QuadratureGrid<1> grid(15.0, 40);
  const HeatKernel1D sol;
  const auto ensemble = init_from_density<1>(
      [&](const Vec<1>& x) { return sol.value(2.0, x[0]); }, grid);
  const Mollifier phi(epsilon_from_cell_size(grid.cell_size()));
  const auto model = EnergyModel<1>::aggregation_diffusion(
      InternalEnergy::log_entropy(), std::nullopt, std::nullopt, phi, grid);
  const auto g = grad_energy(model, ensemble.positions(), ensemble.weights());
  const auto v = velocity_aggdiff(g);
  // -W^{-1} grad E assembled explicitly: v_p = -(1/w_p) * (w_p G_p)
  for (std::size_t p = 0; p < ensemble.size(); ++p) {
    const double assembled =
        -(ensemble.weights()[p] * g[p][0]) / ensemble.weights()[p];
    CHECK(v[p][0] == doctest::Approx(assembled).epsilon(1e-14));
  }
}
