// Command-line front end.  Talks to the solver exclusively through the C API
// of the shared library.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gradflow/gradflow.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitRuntimeError = 2;

struct ConfigHandle {
  gf_config* cfg = nullptr;
  ~ConfigHandle() { gf_config_destroy(cfg); }
};

int report_error(const char* verb, gf_status status) {
  std::fprintf(stderr, "gradflow %s: error %d: %s\n", verb, static_cast<int>(status),
               gf_last_error());
  return kExitRuntimeError;
}

bool load_with_overrides(const std::string& path,
                         const std::vector<std::string>& overrides,
                         ConfigHandle& handle, const char* verb) {
  gf_status status = gf_config_load(path.c_str(), &handle.cfg);
  if (status != GF_OK) {
    report_error(verb, status);
    return false;
  }
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "gradflow %s: --set expects key=value, got '%s'\n", verb,
                   kv.c_str());
      return false;
    }
    status = gf_config_set(handle.cfg, kv.substr(0, eq).c_str(),
                           kv.substr(eq + 1).c_str());
    if (status != GF_OK) {
      report_error(verb, status);
      return false;
    }
  }
  return true;
}

int run_command(const std::string& config_path,
                const std::vector<std::string>& overrides) {
  ConfigHandle handle;
  if (!load_with_overrides(config_path, overrides, handle, "run"))
    return kExitRuntimeError;
  gf_report report;
  const gf_status status = gf_run(handle.cfg, &report);
  if (status != GF_OK) return report_error("run", status);
  char out_path[512] = "";
  gf_config_get(handle.cfg, "output_path", out_path, sizeof(out_path));
  std::printf("steps: %ld\n", report.steps);
  std::printf("fixed-point iterations: mean %.2f, max %d\n", report.mean_iterations,
              report.max_iterations);
  std::printf("energy: %.12g -> %.12g\n", report.initial_energy, report.final_energy);
  if (!std::isnan(report.error_linf))
    std::printf("errors at t_end: L1 %.6g, L2 %.6g, Linf %.6g\n", report.error_l1,
                report.error_l2, report.error_linf);
  std::printf("wall time: %.2fs\n", report.wall_seconds);
  std::printf("diagnostics written to %s\n", out_path);
  return kExitOk;
}

int converge_command(const std::string& config_path,
                     const std::vector<std::string>& overrides,
                     const std::vector<int>& m_values, const std::string& table) {
  ConfigHandle handle;
  if (!load_with_overrides(config_path, overrides, handle, "converge"))
    return kExitRuntimeError;
  std::printf("%8s %12s %14s %14s %14s\n", "M", "h", "L1", "L2", "Linf");
  const auto print_row = [](int m, double h, double l1, double l2, double linf,
                            void*) {
    std::printf("%8d %12.6g %14.6g %14.6g %14.6g\n", m, h, l1, l2, linf);
  };
  double orders[3];
  const gf_status status =
      gf_converge(handle.cfg, m_values.data(), static_cast<int>(m_values.size()),
                  print_row, nullptr, table.empty() ? nullptr : table.c_str(), orders);
  if (status != GF_OK) return report_error("converge", status);
  if (!std::isnan(orders[0]))
    std::printf("fitted orders: L1 %.3f, L2 %.3f, Linf %.3f\n", orders[0], orders[1],
                orders[2]);
  if (!table.empty()) std::printf("table written to %s\n", table.c_str());
  return kExitOk;
}

int check_command(const std::string& config_path,
                  const std::vector<std::string>& overrides) {
  ConfigHandle handle;
  if (!load_with_overrides(config_path, overrides, handle, "check"))
    return kExitRuntimeError;
  const auto print_row = [](const char* name, int passed, const char* detail, void*) {
    std::printf("[%s] %-24s %s\n", passed ? "PASS" : "FAIL", name, detail);
  };
  int failures = 0;
  const gf_status status = gf_check(handle.cfg, print_row, nullptr, &failures);
  if (status != GF_OK) return report_error("check", status);
  if (failures > 0) {
    std::printf("%d check(s) failed\n", failures);
    return kExitCheckFailure;
  }
  std::printf("all checks passed\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("gradflow ") + gf_version() +
               " - structure-preserving particle solver for continuity equations"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::vector<int> m_values;
  std::string table_path;

  auto* run = app.add_subcommand("run", "run a scenario and write diagnostics CSV");
  run->add_option("--config", config_path, "config file (key=value lines)")->required();
  run->add_option("--set", overrides, "override a config key, e.g. --set dt=0.005");

  auto* converge = app.add_subcommand("converge", "error table over several resolutions");
  converge->add_option("--config", config_path, "config file")->required();
  converge->add_option("--M", m_values, "comma-separated cells_per_dim list")
      ->required()
      ->delimiter(',');
  converge->add_option("--out", table_path, "write the error table as CSV");
  converge->add_option("--set", overrides, "override a config key");

  auto* check = app.add_subcommand("check", "run reduced-scale invariant checks");
  check->add_option("--config", config_path, "config file")->required();
  check->add_option("--set", overrides, "override a config key");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitRuntimeError;
  }

  if (run->parsed()) return run_command(config_path, overrides);
  if (converge->parsed()) return converge_command(config_path, overrides, m_values, table_path);
  return check_command(config_path, overrides);
}
