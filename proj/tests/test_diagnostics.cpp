#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "analytic_solutions.hpp"
#include "diagnostics.hpp"
#include "energy_model.hpp"
#include "oracles.hpp"

using namespace gradflow;

TEST_CASE("weighted moments of a single particle") {
  const std::vector<Vec<2>> x{{1.0, 2.0}};
  const std::vector<double> w{1.0};
  CHECK(total_mass<2>(w) == 1.0);
  const Vec<2> p = momentum(x, w);
  CHECK(p[0] == 1.0);
  CHECK(p[1] == 2.0);
  CHECK(kinetic_energy(x, w) == 2.5);
}

TEST_CASE("symmetric pair has zero momentum") {
  const std::vector<Vec<1>> x{{0.7}, {-0.7}};
  const std::vector<double> w{0.25, 0.25};
  CHECK(momentum(x, w)[0] == 0.0);
  CHECK(kinetic_energy(x, w) == doctest::Approx(0.25 * 0.49).epsilon(1e-15));
}

TEST_CASE("bkw initialization has unit mass and centered momentum") {
  const QuadratureGrid<2> grid(4.0, 40);
  const BkwSolution2D sol;
  const auto ens = init_from_density<2>(
      [&](const Vec<2>& x) { return sol.value(0.0, x); }, grid);
  CHECK(std::abs(total_mass<2>(ens.weights()) - 1.0) <= 1e-6);
  CHECK(max_abs(momentum(ens.positions(), ens.weights())) <= 1e-12);
}

TEST_CASE("fisher information of a uniform gradient field") {
  const std::size_t n = 7;
  const double w = 0.3;
  const Vec<2> g{1.5, -2.0};
  const std::vector<double> weights(n, w);
  const std::vector<Vec<2>> grad(n, g);
  CHECK(fisher_information(weights, grad) ==
        doctest::Approx(n * w * norm_sq(g)).epsilon(1e-15));
}

TEST_CASE("single centered particle has zero fisher information") {
  const QuadratureGrid<2> grid(4.0, 9);  // odd: a center sits at the origin
  const Mollifier phi(0.4);
  const auto model = EnergyModel<2>::landau(maxwell_kernel(), phi, grid);
  const std::vector<Vec<2>> x{{0.0, 0.0}};
  const std::vector<double> w{1.0};
  const auto g = grad_energy(model, x, w);
  CHECK(fisher_information(w, g) <= 1e-25);
}

TEST_CASE("dissipation rate of a uniform field vanishes") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Vec<2>> x(9), g(9, Vec<2>{0.4, 0.6});
  std::vector<double> w(9, 0.1);
  for (auto& p : x) p = {u(rng), u(rng)};
  CHECK(dissipation_rate(maxwell_kernel(), x, w, g) == 0.0);
}

TEST_CASE("two-particle dissipation rate by hand") {
  // pairs (p,q) and (q,p) each contribute half:
  //   D = w1 w2 dg^T A(x1-x2) dg
  const std::vector<Vec<2>> x{{1.0, 0.0}, {0.0, 0.0}};
  const std::vector<double> w{0.5, 0.25};
  const std::vector<Vec<2>> g{{0.0, 1.0}, {0.0, 0.0}};
  // A((1,0)) (0,1) = (0, 1/16); dg.A dg = 1/16
  const double expected = 0.5 * 0.25 * (1.0 / 16.0);
  CHECK(dissipation_rate(maxwell_kernel(), x, w, g) ==
        doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("dissipation rate is nonnegative for random data") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vec<2>> x(20), g(20);
    std::vector<double> w(20);
    double scale = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = {u(rng), u(rng)};
      g[i] = {u(rng), u(rng)};
      w[i] = 0.05 + 0.01 * i;
      scale += w[i] * norm_sq(g[i]);
    }
    const auto kernel = trial % 2 == 0 ? maxwell_kernel() : coulomb_kernel();
    CHECK(dissipation_rate(kernel, x, w, g) >= -1e-12 * scale);
  }
}

TEST_CASE("error norms of a field against itself vanish") {
  const QuadratureGrid<1> grid(15.0, 40);
  const HeatKernel1D sol;
  const auto ens = init_from_density<1>(
      [&](const Vec<1>& x) { return sol.value(2.0, x[0]); }, grid);
  const double eps = epsilon_from_cell_size(grid.cell_size());
  // exact = the blob itself
  const auto blob_at = [&](const Vec<1>& x) {
    return oracles::density_at<1>(ens.positions(), ens.weights(), eps, x);
  };
  const ErrorNorms norms =
      error_norms<1>(ens.positions(), ens.weights(), eps, blob_at, grid);
  CHECK(norms.l1 <= 1e-14);
  CHECK(norms.l2 <= 1e-14);
  CHECK(norms.linf <= 1e-14);
}

TEST_CASE("convergence order recovers exact power laws") {
  const std::vector<double> h{0.5, 0.25, 0.125, 0.0625};
  std::vector<double> e2, e1;
  for (double x : h) {
    e2.push_back(3.0 * x * x);
    e1.push_back(0.7 * x);
  }
  CHECK(convergence_order(h, e2) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(convergence_order(h, e1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(convergence_order({0.5}, {1.0}), InvalidArgumentError);
  CHECK_THROWS_AS(convergence_order({0.5, -0.1}, {1.0, 1.0}), InvalidArgumentError);
  CHECK_THROWS_AS(convergence_order({0.5, 0.25}, {1.0, 0.0}), InvalidArgumentError);
}

TEST_CASE("heat kernel closed form") {
  const HeatKernel1D sol;
  CHECK(sol.value(2.0, 0.0) == doctest::Approx(std::pow(8.0 * M_PI, -0.5)).epsilon(1e-15));
  CHECK(sol.value(2.0, 0.0) == doctest::Approx(0.19947114020071635).epsilon(1e-12));
  CHECK_THROWS_AS(sol.value(0.0, 1.0), InvalidArgumentError);
  CHECK_THROWS_AS(sol.value(-1.0, 1.0), InvalidArgumentError);
}

TEST_CASE("barenblatt support and mass") {
  const Barenblatt1D sol{1.5, 1.0};
  CHECK(sol.alpha() == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(sol.kappa() == doctest::Approx(0.4 * 0.5 / 3.0).epsilon(1e-15));
  const double r = sol.support_radius(2.0);
  CHECK(sol.value(2.0, r * 1.0001) == 0.0);
  CHECK(sol.value(2.0, r * 0.9999) > 0.0);
  // quadrature mass against the gamma-function constant
  const QuadratureGrid<1> grid(12.0, 3000);
  const double mass = oracles::midpoint_mass<1>(
      [&](const Vec<1>& x) { return sol.value(1.0, x[0]); }, grid);
  CHECK(mass == doctest::Approx(sol.total_mass()).epsilon(1e-4));
  CHECK_THROWS_AS(sol.value(0.0, 0.0), InvalidArgumentError);
}

TEST_CASE("linear fokker-planck solution properties") {
  const LinearFokkerPlanck1D sol;
  const double s = 1.0 - std::exp(-1.0);
  CHECK(sol.value(0.5, 0.0) ==
        doctest::Approx(std::pow(2.0 * M_PI * s, -0.5)).epsilon(1e-15));
  const QuadratureGrid<1> grid(8.0, 2000);
  const double mass = oracles::midpoint_mass<1>(
      [&](const Vec<1>& x) { return sol.value(0.5, x[0]); }, grid);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(sol.value(0.0, 0.0), InvalidArgumentError);
}

TEST_CASE("bkw thermal radius and normalization") {
  const BkwSolution2D sol;
  CHECK(sol.thermal_radius(0.0) == 0.5);
  CHECK(sol.value(0.0, {0.0, 0.0}) == 0.0);  // R = 1/2 zeroes the constant term
  CHECK_THROWS_AS(sol.value(-0.1, {0.0, 0.0}), InvalidArgumentError);
  // mass 1 and kinetic energy 1 at any time
  const QuadratureGrid<2> grid(6.0, 150);
  for (double t : {0.0, 1.0, 5.0}) {
    double mass = 0.0, kin = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Vec<2> x = grid.center(i);
      const double f = sol.value(t, x);
      mass += f;
      kin += 0.5 * norm_sq(x) * f;
    }
    mass *= grid.cell_volume();
    kin *= grid.cell_volume();
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(kin == doctest::Approx(1.0).epsilon(1e-3));
  }
}
