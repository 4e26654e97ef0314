#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "diagnostics.hpp"
#include "energy_model.hpp"

namespace gradflow {

// The six built-in experiment setups.
enum class ScenarioKind {
  Heat,           // 1D heat equation, log entropy
  PorousMedium,   // 1D porous medium, power law m
  LinearFP,       // 1D Fokker-Planck via external potential x^2/2
  NonlocalFP,     // same equation via interaction potential x^2/2
  LandauMaxwell,  // 2D Landau, gamma = 0, BKW initial data
  LandauCoulomb,  // 2D Landau, gamma = -3, two-bump initial data
};

struct ScenarioConfig {
  std::string scenario;
  double half_width = 0.0;
  int cells_per_dim = 0;
  double dt = 0.0;
  double t_start = 0.0;
  double t_end = 0.0;
  double epsilon_coeff = 0.64;
  double epsilon_power = 1.98;
  double m_exponent = 1.5;      // porous-medium internal energy
  double barenblatt_k = 1.0;    // Barenblatt normalization K
  double kernel_strength = 1.0 / 16.0;
  double kernel_gamma = 0.0;
  double solver_tolerance = 1e-15;
  int solver_max_iterations = 200;
  int quadrature_nodes = 4;
  double mollifier_cutoff = 0.0;  // units of sqrt(eps); 0 disables
  std::string output_path;
  int diag_every = 1;

  ScenarioKind kind() const;
  int dimension() const;
  bool is_landau() const;
  bool has_analytic_solution() const;
  double cell_size() const { return 2.0 * half_width / cells_per_dim; }
  double epsilon() const;
  void validate() const;  // throws ConfigError
};

// Defaults for a named scenario; throws ConfigError for unknown names.
ScenarioConfig default_config(const std::string& scenario);

// Flat key=value text, '#' comments, unknown keys rejected.  The text must
// assign `scenario`; remaining keys override that scenario's defaults.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

// Single-key access used by the C API and CLI overrides.
void config_set(ScenarioConfig& cfg, const std::string& key, const std::string& value);
std::string config_get(const ScenarioConfig& cfg, const std::string& key);
const std::vector<std::string>& config_keys();

// Diagnostics row with the dimension erased (py unused for 1D runs).
struct RunRow {
  long step = 0;
  double time = 0.0;
  double mass = 0.0;
  double px = 0.0;
  double py = 0.0;
  double kinetic = 0.0;
  double energy = 0.0;
  std::optional<double> fisher;
  std::optional<double> dissipation;
  int iterations = 0;
};

struct RunReport {
  int dimension = 1;
  long steps = 0;
  std::size_t particles = 0;
  std::vector<RunRow> rows;  // step 0, every diag_every-th step, final step
  double mean_iterations = 0.0;
  int max_iterations = 0;
  double initial_energy = 0.0;
  double final_energy = 0.0;
  std::optional<ErrorNorms> final_errors;
  double wall_seconds = 0.0;
};

RunReport run_scenario(const ScenarioConfig& cfg);

struct ConvergeRow {
  int cells_per_dim = 0;
  double cell_size = 0.0;
  ErrorNorms errors;
};

struct ConvergeResult {
  std::vector<ConvergeRow> rows;
  // fitted L1/L2/Linf orders; unset with fewer than two resolutions
  std::optional<std::array<double, 3>> orders;
};

ConvergeResult converge_scenario(const ScenarioConfig& cfg,
                                 const std::vector<int>& m_values);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Module invariant suites at reduced scale.
std::vector<CheckResult> run_checks(const ScenarioConfig& cfg);

// Grid, energy model and initial ensemble for a configuration, plus the
// analytic solution when the scenario has one.
template <std::size_t D>
struct ScenarioSetup {
  QuadratureGrid<D> grid;
  EnergyModel<D> model;
  ParticleEnsemble<D> ensemble;
  std::function<double(double, const Vec<D>&)> exact;  // null when unavailable
};

ScenarioSetup<1> make_setup_1d(const ScenarioConfig& cfg);
ScenarioSetup<2> make_setup_2d(const ScenarioConfig& cfg);

}  // namespace gradflow
