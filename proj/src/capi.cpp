#include "gradflow/gradflow.h"

#include <cmath>
#include <cstring>
#include <string>

#include "csv.hpp"
#include "errors.hpp"
#include "scenario.hpp"

// C binding: exceptions from the core are translated to status codes, with
// the message kept in a thread-local buffer for gf_last_error().

struct gf_config {
  gradflow::ScenarioConfig cfg;
};

namespace {

thread_local std::string g_last_error = "ok";

gf_status fail(gf_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <class Fn>
gf_status guarded(Fn&& fn) {
  try {
    fn();
    return GF_OK;
  } catch (const gradflow::ConfigError& e) {
    return fail(GF_ERR_CONFIG, e.what());
  } catch (const gradflow::NonConvergenceError& e) {
    return fail(GF_ERR_NO_CONVERGENCE, e.what());
  } catch (const gradflow::NumericalDomainError& e) {
    return fail(GF_ERR_NUMERIC, e.what());
  } catch (const gradflow::IoError& e) {
    return fail(GF_ERR_IO, e.what());
  } catch (const gradflow::InvalidArgumentError& e) {
    return fail(GF_ERR_INVALID_ARGUMENT, e.what());
  } catch (const gradflow::Error& e) {
    return fail(GF_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(GF_ERR_UNKNOWN, e.what());
  }
}

}  // namespace

extern "C" {

const char* gf_version(void) { return "0.1.0"; }

const char* gf_last_error(void) { return g_last_error.c_str(); }

gf_status gf_config_create(const char* scenario, gf_config** out) {
  if (!scenario || !out) return fail(GF_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new gf_config{gradflow::default_config(scenario)};
  });
}

gf_status gf_config_load(const char* path, gf_config** out) {
  if (!path || !out) return fail(GF_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new gf_config{gradflow::load_config(path)}; });
}

gf_status gf_config_set(gf_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return fail(GF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { gradflow::config_set(cfg->cfg, key, value); });
}

gf_status gf_config_get(const gf_config* cfg, const char* key, char* buf,
                        size_t buflen) {
  if (!cfg || !key || !buf || buflen == 0)
    return fail(GF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const std::string v = gradflow::config_get(cfg->cfg, key);
    if (v.size() + 1 > buflen)
      throw gradflow::InvalidArgumentError("buffer too small for key " +
                                           std::string(key));
    std::memcpy(buf, v.c_str(), v.size() + 1);
  });
}

void gf_config_destroy(gf_config* cfg) { delete cfg; }

gf_status gf_run(const gf_config* cfg, gf_report* report) {
  if (!cfg) return fail(GF_ERR_INVALID_ARGUMENT, "null config");
  return guarded([&] {
    const gradflow::RunReport r = gradflow::run_scenario(cfg->cfg);
    gradflow::write_report_csv(r, cfg->cfg.output_path);
    if (report) {
      report->steps = r.steps;
      report->mean_iterations = r.mean_iterations;
      report->max_iterations = r.max_iterations;
      report->initial_energy = r.initial_energy;
      report->final_energy = r.final_energy;
      const double nan = std::nan("");
      report->error_l1 = r.final_errors ? r.final_errors->l1 : nan;
      report->error_l2 = r.final_errors ? r.final_errors->l2 : nan;
      report->error_linf = r.final_errors ? r.final_errors->linf : nan;
      report->wall_seconds = r.wall_seconds;
    }
  });
}

gf_status gf_converge(const gf_config* cfg, const int* m_values, int count,
                      gf_error_row_fn row_fn, void* user,
                      const char* table_path, double* orders_out) {
  if (!cfg || !m_values || count < 1)
    return fail(GF_ERR_INVALID_ARGUMENT, "need a config and at least one resolution");
  return guarded([&] {
    const std::vector<int> ms(m_values, m_values + count);
    const gradflow::ConvergeResult result =
        gradflow::converge_scenario(cfg->cfg, ms);
    if (row_fn)
      for (const auto& row : result.rows)
        row_fn(row.cells_per_dim, row.cell_size, row.errors.l1, row.errors.l2,
               row.errors.linf, user);
    if (table_path) gradflow::write_converge_csv(result, table_path);
    if (orders_out) {
      const double nan = std::nan("");
      for (int i = 0; i < 3; ++i)
        orders_out[i] = result.orders ? (*result.orders)[i] : nan;
    }
  });
}

gf_status gf_check(const gf_config* cfg, gf_check_row_fn row_fn, void* user,
                   int* failures_out) {
  if (!cfg) return fail(GF_ERR_INVALID_ARGUMENT, "null config");
  return guarded([&] {
    const auto results = gradflow::run_checks(cfg->cfg);
    int failures = 0;
    for (const auto& r : results) {
      if (!r.passed) ++failures;
      if (row_fn) row_fn(r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str(), user);
    }
    if (failures_out) *failures_out = failures;
  });
}

}  // extern "C"
