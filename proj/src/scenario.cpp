#include "scenario.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "analytic_solutions.hpp"
#include "csv.hpp"
#include "energy_model.hpp"
#include "errors.hpp"
#include "integrator.hpp"

namespace gradflow {

ScenarioKind ScenarioConfig::kind() const {
  if (scenario == "heat") return ScenarioKind::Heat;
  if (scenario == "porous_medium") return ScenarioKind::PorousMedium;
  if (scenario == "linear_fp") return ScenarioKind::LinearFP;
  if (scenario == "nonlocal_fp") return ScenarioKind::NonlocalFP;
  if (scenario == "landau_maxwell") return ScenarioKind::LandauMaxwell;
  if (scenario == "landau_coulomb") return ScenarioKind::LandauCoulomb;
  throw ConfigError("unknown scenario: '" + scenario + "'");
}

int ScenarioConfig::dimension() const {
  const ScenarioKind k = kind();
  return (k == ScenarioKind::LandauMaxwell || k == ScenarioKind::LandauCoulomb) ? 2 : 1;
}

bool ScenarioConfig::is_landau() const { return dimension() == 2; }

bool ScenarioConfig::has_analytic_solution() const {
  return kind() != ScenarioKind::LandauCoulomb;
}

double ScenarioConfig::epsilon() const {
  return epsilon_coeff * std::pow(cell_size(), epsilon_power);
}

void ScenarioConfig::validate() const {
  kind();  // known scenario
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw ConfigError("half_width must be positive");
  if (cells_per_dim < 2) throw ConfigError("cells_per_dim must be >= 2");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (!(t_end > t_start)) throw ConfigError("t_end must exceed t_start");
  if (!(epsilon_coeff > 0.0)) throw ConfigError("epsilon_coeff must be positive");
  if (!std::isfinite(epsilon_power)) throw ConfigError("epsilon_power must be finite");
  if (!(m_exponent > 1.0)) throw ConfigError("m_exponent must be > 1");
  if (!(barenblatt_k > 0.0)) throw ConfigError("barenblatt_k must be positive");
  if (!(kernel_strength > 0.0)) throw ConfigError("kernel_strength must be positive");
  if (!std::isfinite(kernel_gamma)) throw ConfigError("kernel_gamma must be finite");
  if (!(solver_tolerance > 0.0)) throw ConfigError("solver_tolerance must be positive");
  if (solver_max_iterations < 1) throw ConfigError("solver_max_iterations must be >= 1");
  if (quadrature_nodes < 1) throw ConfigError("quadrature_nodes must be >= 1");
  if (mollifier_cutoff < 0.0) throw ConfigError("mollifier_cutoff must be >= 0");
  if (diag_every < 1) throw ConfigError("diag_every must be >= 1");
  const double span = (t_end - t_start) / dt;
  if (std::abs(span - std::round(span)) > 1e-9 * std::max(1.0, span))
    throw ConfigError("time interval is not an integer number of steps");
}

ScenarioConfig default_config(const std::string& scenario) {
  ScenarioConfig cfg;
  cfg.scenario = scenario;
  switch (cfg.kind()) {
    case ScenarioKind::Heat:
      cfg.half_width = 15.0;
      cfg.cells_per_dim = 60;
      cfg.dt = 0.01;
      cfg.t_start = 2.0;
      cfg.t_end = 3.0;
      break;
    case ScenarioKind::PorousMedium:
      cfg.half_width = 8.0;
      cfg.cells_per_dim = 60;
      cfg.dt = 0.01;
      cfg.t_start = 2.0;
      cfg.t_end = 3.0;
      break;
    case ScenarioKind::LinearFP:
    case ScenarioKind::NonlocalFP:
      cfg.half_width = 5.0;
      cfg.cells_per_dim = 60;
      cfg.dt = 0.01 / 10.0;
      cfg.t_start = 0.5;
      cfg.t_end = 1.0;
      break;
    case ScenarioKind::LandauMaxwell:
      cfg.half_width = 4.0;
      cfg.cells_per_dim = 40;
      cfg.dt = 0.01 / 8.0;
      cfg.t_start = 0.0;
      cfg.t_end = 5.0;
      break;
    case ScenarioKind::LandauCoulomb:
      cfg.half_width = 10.0;
      cfg.cells_per_dim = 40;
      cfg.dt = 0.1 / 2.0;
      cfg.t_start = 0.0;
      cfg.t_end = 20.0;
      cfg.kernel_gamma = -3.0;
      break;
  }
  cfg.diag_every = cfg.dimension() == 2 ? 10 : 1;
  cfg.output_path = scenario + ".csv";
  return cfg;
}

namespace {

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid numeric value for " + key + ": '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer value for " + key + ": '" + value + "'");
  }
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "scenario",        "half_width",      "cells_per_dim",
      "dt",              "t_start",         "t_end",
      "epsilon_coeff",   "epsilon_power",   "m_exponent",
      "barenblatt_k",    "kernel_strength", "kernel_gamma",
      "solver_tolerance", "solver_max_iterations", "quadrature_nodes",
      "mollifier_cutoff", "output_path",    "diag_every",
  };
  return keys;
}

void config_set(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "scenario") {
    ScenarioConfig fresh;
    fresh.scenario = value;
    fresh.kind();  // reject unknown names before overwriting
    cfg.scenario = value;
  } else if (key == "half_width") {
    cfg.half_width = parse_double(key, value);
  } else if (key == "cells_per_dim") {
    cfg.cells_per_dim = parse_int(key, value);
  } else if (key == "dt") {
    cfg.dt = parse_double(key, value);
  } else if (key == "t_start") {
    cfg.t_start = parse_double(key, value);
  } else if (key == "t_end") {
    cfg.t_end = parse_double(key, value);
  } else if (key == "epsilon_coeff") {
    cfg.epsilon_coeff = parse_double(key, value);
  } else if (key == "epsilon_power") {
    cfg.epsilon_power = parse_double(key, value);
  } else if (key == "m_exponent") {
    cfg.m_exponent = parse_double(key, value);
  } else if (key == "barenblatt_k") {
    cfg.barenblatt_k = parse_double(key, value);
  } else if (key == "kernel_strength") {
    cfg.kernel_strength = parse_double(key, value);
  } else if (key == "kernel_gamma") {
    cfg.kernel_gamma = parse_double(key, value);
  } else if (key == "solver_tolerance") {
    cfg.solver_tolerance = parse_double(key, value);
  } else if (key == "solver_max_iterations") {
    cfg.solver_max_iterations = parse_int(key, value);
  } else if (key == "quadrature_nodes") {
    cfg.quadrature_nodes = parse_int(key, value);
  } else if (key == "mollifier_cutoff") {
    cfg.mollifier_cutoff = parse_double(key, value);
  } else if (key == "output_path") {
    cfg.output_path = value;
  } else if (key == "diag_every") {
    cfg.diag_every = parse_int(key, value);
  } else {
    throw ConfigError("unknown config key: '" + key + "'");
  }
}

std::string config_get(const ScenarioConfig& cfg, const std::string& key) {
  auto fmt = [](double v) { return format_double(v); };
  if (key == "scenario") return cfg.scenario;
  if (key == "half_width") return fmt(cfg.half_width);
  if (key == "cells_per_dim") return std::to_string(cfg.cells_per_dim);
  if (key == "dt") return fmt(cfg.dt);
  if (key == "t_start") return fmt(cfg.t_start);
  if (key == "t_end") return fmt(cfg.t_end);
  if (key == "epsilon_coeff") return fmt(cfg.epsilon_coeff);
  if (key == "epsilon_power") return fmt(cfg.epsilon_power);
  if (key == "m_exponent") return fmt(cfg.m_exponent);
  if (key == "barenblatt_k") return fmt(cfg.barenblatt_k);
  if (key == "kernel_strength") return fmt(cfg.kernel_strength);
  if (key == "kernel_gamma") return fmt(cfg.kernel_gamma);
  if (key == "solver_tolerance") return fmt(cfg.solver_tolerance);
  if (key == "solver_max_iterations") return std::to_string(cfg.solver_max_iterations);
  if (key == "quadrature_nodes") return std::to_string(cfg.quadrature_nodes);
  if (key == "mollifier_cutoff") return fmt(cfg.mollifier_cutoff);
  if (key == "output_path") return cfg.output_path;
  if (key == "diag_every") return std::to_string(cfg.diag_every);
  throw ConfigError("unknown config key: '" + key + "'");
}

ScenarioConfig parse_config(const std::string& text) {
  // first pass finds the scenario so defaults are in place before overrides
  std::vector<std::pair<std::string, std::string>> entries;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    entries.emplace_back(key, value);
  }
  std::string scenario;
  for (const auto& [k, v] : entries)
    if (k == "scenario") scenario = v;
  if (scenario.empty()) throw ConfigError("config does not set 'scenario'");
  ScenarioConfig cfg = default_config(scenario);
  for (const auto& [k, v] : entries)
    if (k != "scenario") config_set(cfg, k, v);
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config(buf.str());
}

namespace {

// Initial density and the exact solution (when known) for one scenario.
template <std::size_t D>
struct ScenarioProblem {
  std::function<double(const Vec<D>&)> initial;  // f(t_start, .)
  std::function<double(double, const Vec<D>&)> exact;  // null when unavailable
};

ScenarioProblem<1> make_problem_1d(const ScenarioConfig& cfg) {
  ScenarioProblem<1> pb;
  switch (cfg.kind()) {
    case ScenarioKind::Heat: {
      HeatKernel1D sol;
      const double t0 = cfg.t_start;
      pb.initial = [sol, t0](const Vec<1>& x) { return sol.value(t0, x[0]); };
      pb.exact = [sol](double t, const Vec<1>& x) { return sol.value(t, x[0]); };
      break;
    }
    case ScenarioKind::PorousMedium: {
      Barenblatt1D sol{cfg.m_exponent, cfg.barenblatt_k};
      const double t0 = cfg.t_start;
      pb.initial = [sol, t0](const Vec<1>& x) { return sol.value(t0, x[0]); };
      pb.exact = [sol](double t, const Vec<1>& x) { return sol.value(t, x[0]); };
      break;
    }
    case ScenarioKind::LinearFP:
    case ScenarioKind::NonlocalFP: {
      LinearFokkerPlanck1D sol;
      const double t0 = cfg.t_start;
      pb.initial = [sol, t0](const Vec<1>& x) { return sol.value(t0, x[0]); };
      pb.exact = [sol](double t, const Vec<1>& x) { return sol.value(t, x[0]); };
      break;
    }
    default:
      throw ConfigError("scenario is not one-dimensional");
  }
  return pb;
}

ScenarioProblem<2> make_problem_2d(const ScenarioConfig& cfg) {
  ScenarioProblem<2> pb;
  switch (cfg.kind()) {
    case ScenarioKind::LandauMaxwell: {
      BkwSolution2D sol;
      const double t0 = cfg.t_start;
      pb.initial = [sol, t0](const Vec<2>& x) { return sol.value(t0, x); };
      pb.exact = [sol](double t, const Vec<2>& x) { return sol.value(t, x); };
      break;
    }
    case ScenarioKind::LandauCoulomb: {
      pb.initial = [](const Vec<2>& x) {
        const Vec<2> u1{-2.0, 1.0};
        const Vec<2> u2{0.0, -1.0};
        return 0.25 * M_PI * (std::exp(-0.5 * norm_sq(x - u1)) +
                              std::exp(-0.5 * norm_sq(x - u2)));
      };
      break;
    }
    default:
      throw ConfigError("scenario is not two-dimensional");
  }
  return pb;
}

template <std::size_t D>
ScenarioProblem<D> make_problem(const ScenarioConfig& cfg) {
  if constexpr (D == 1)
    return make_problem_1d(cfg);
  else
    return make_problem_2d(cfg);
}

template <std::size_t D>
EnergyModel<D> make_model(const ScenarioConfig& cfg, const QuadratureGrid<D>& grid) {
  Mollifier phi(cfg.epsilon_coeff * std::pow(grid.cell_size(), cfg.epsilon_power),
                cfg.mollifier_cutoff);
  if constexpr (D == 2) {
    return EnergyModel<D>::landau(CollisionKernel(cfg.kernel_strength, cfg.kernel_gamma),
                                  phi, grid);
  } else {
    std::optional<InternalEnergy> internal;
    std::optional<Potential<D>> external;
    std::optional<Potential<D>> interaction;
    switch (cfg.kind()) {
      case ScenarioKind::Heat:
        internal = InternalEnergy::log_entropy();
        break;
      case ScenarioKind::PorousMedium:
        internal = InternalEnergy::power_law(cfg.m_exponent);
        break;
      case ScenarioKind::LinearFP:
        internal = InternalEnergy::log_entropy();
        external = make_potential<D>("quadratic");
        break;
      case ScenarioKind::NonlocalFP:
        internal = InternalEnergy::log_entropy();
        interaction = make_potential<D>("quadratic");
        break;
      default:
        throw ConfigError("scenario is not one-dimensional");
    }
    return EnergyModel<D>::aggregation_diffusion(internal, std::move(external),
                                                 std::move(interaction), phi, grid);
  }
}

template <std::size_t D>
RunRow make_row(long step, double time, const std::vector<Vec<D>>& positions,
                const std::vector<double>& weights, double energy, int iterations) {
  RunRow row;
  row.step = step;
  row.time = time;
  row.mass = total_mass<D>(weights);
  const Vec<D> p = momentum(positions, weights);
  row.px = p[0];
  row.py = D == 2 ? p[D - 1] : 0.0;
  row.kinetic = kinetic_energy(positions, weights);
  row.energy = energy;
  row.iterations = iterations;
  return row;
}

template <std::size_t D>
ScenarioSetup<D> make_setup(const ScenarioConfig& cfg) {
  QuadratureGrid<D> grid(cfg.half_width, cfg.cells_per_dim);
  EnergyModel<D> model = make_model<D>(cfg, grid);
  ScenarioProblem<D> problem = make_problem<D>(cfg);
  ParticleEnsemble<D> ensemble = init_from_density<D>(problem.initial, grid);
  return ScenarioSetup<D>{std::move(grid), std::move(model), std::move(ensemble),
                          std::move(problem.exact)};
}

template <std::size_t D>
RunReport run_impl(const ScenarioConfig& cfg) {
  const auto wall_start = std::chrono::steady_clock::now();
  const ScenarioSetup<D> setup = make_setup<D>(cfg);
  const EnergyModel<D>& model = setup.model;
  const QuadratureGrid<D>& grid = setup.grid;
  const ParticleEnsemble<D>& ensemble = setup.ensemble;
  const std::vector<double>& weights = ensemble.weights();

  const long n_steps = static_cast<long>(std::round((cfg.t_end - cfg.t_start) / cfg.dt));
  const FixedPointConfig fp{cfg.dt, cfg.solver_tolerance, cfg.solver_max_iterations};
  const MeanValueConfig mv{cfg.quadrature_nodes};

  RunReport report;
  report.dimension = D;
  report.steps = n_steps;
  report.particles = ensemble.size();

  std::vector<Vec<D>> x = ensemble.positions();
  report.initial_energy = energy_value(model, x, weights);
  report.rows.push_back(make_row<D>(0, cfg.t_start, x, weights, report.initial_energy, 0));

  long iter_sum = 0;
  for (long step = 1; step <= n_steps; ++step) {
    StepResult<D> result;
    std::vector<Vec<D>> mid;
    if (cfg.is_landau()) {
      result = step_landau(model, weights, x, fp, mv);
      mid.resize(x.size());
      for (std::size_t p = 0; p < x.size(); ++p)
        mid[p] = 0.5 * (x[p] + result.positions[p]);
    } else {
      result = step_aggdiff(model, weights, x, fp, mv);
    }
    x = std::move(result.positions);
    iter_sum += result.iterations;
    report.max_iterations = std::max(report.max_iterations, result.iterations);
    if (step % cfg.diag_every == 0 || step == n_steps) {
      const double energy = energy_value(model, x, weights);
      RunRow row = make_row<D>(step, cfg.t_start + step * cfg.dt, x, weights, energy,
                               result.iterations);
      if (cfg.is_landau()) {
        row.fisher = fisher_information(weights, result.mean_gradient);
        row.dissipation = dissipation_rate(model.kernel(), mid, weights,
                                           result.mean_gradient);
      }
      report.rows.push_back(std::move(row));
    }
  }
  report.mean_iterations = n_steps > 0 ? static_cast<double>(iter_sum) / n_steps : 0.0;
  report.final_energy = report.rows.back().energy;

  if (setup.exact) {
    const double t_final = cfg.t_start + n_steps * cfg.dt;
    const auto& exact = setup.exact;
    report.final_errors = error_norms<D>(
        x, weights, model.mollifier().epsilon(),
        [&](const Vec<D>& p) { return exact(t_final, p); }, grid);
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  return report;
}

}  // namespace

ScenarioSetup<1> make_setup_1d(const ScenarioConfig& cfg) { return make_setup<1>(cfg); }
ScenarioSetup<2> make_setup_2d(const ScenarioConfig& cfg) { return make_setup<2>(cfg); }

RunReport run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  if (cfg.dimension() == 1) return run_impl<1>(cfg);
  return run_impl<2>(cfg);
}

ConvergeResult converge_scenario(const ScenarioConfig& cfg,
                                 const std::vector<int>& m_values) {
  cfg.validate();
  if (!cfg.has_analytic_solution())
    throw InvalidArgumentError("converge: scenario '" + cfg.scenario +
                               "' has no analytic solution");
  if (m_values.empty())
    throw InvalidArgumentError("converge: need at least one resolution");
  ConvergeResult result;
  for (int m : m_values) {
    ScenarioConfig c = cfg;
    c.cells_per_dim = m;
    const RunReport report = run_scenario(c);
    result.rows.push_back(ConvergeRow{m, c.cell_size(), *report.final_errors});
  }
  if (result.rows.size() >= 2) {
    std::vector<double> h, e1, e2, einf;
    for (const auto& r : result.rows) {
      h.push_back(r.cell_size);
      e1.push_back(r.errors.l1);
      e2.push_back(r.errors.l2);
      einf.push_back(r.errors.linf);
    }
    result.orders = std::array<double, 3>{convergence_order(h, e1),
                                          convergence_order(h, e2),
                                          convergence_order(h, einf)};
  }
  return result;
}

}  // namespace gradflow
