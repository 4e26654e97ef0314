#ifndef GRADFLOW_H
#define GRADFLOW_H

/* C interface to the gradflow particle solver.
 *
 * The library simulates nonlinear continuity equations (aggregation-diffusion
 * family and the 2D Landau collision equation) with a deterministic blob
 * particle method and discrete-gradient time integration.  All entry points
 * operate on an opaque scenario configuration and return a status code;
 * gf_last_error() gives a human-readable message for the last failure on the
 * calling thread.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gf_status {
  GF_OK = 0,
  GF_ERR_INVALID_ARGUMENT = 1,
  GF_ERR_CONFIG = 2,
  GF_ERR_NUMERIC = 3,
  GF_ERR_NO_CONVERGENCE = 4,
  GF_ERR_IO = 5,
  GF_ERR_UNKNOWN = 99
} gf_status;

/* Opaque scenario configuration handle. */
typedef struct gf_config gf_config;

typedef struct gf_report {
  long steps;              /* time steps taken */
  double mean_iterations;  /* fixed-point iterations, averaged over steps */
  int max_iterations;      /* worst step */
  double initial_energy;
  double final_energy;
  /* Error norms against the scenario's analytic solution at t_end.
     NaN when the scenario has none (landau_coulomb). */
  double error_l1;
  double error_l2;
  double error_linf;
  double wall_seconds;
} gf_report;

const char* gf_version(void);

/* Message describing the most recent failure on this thread; never NULL. */
const char* gf_last_error(void);

/* Creates a configuration preloaded with the named scenario's defaults.
   Scenarios: heat, porous_medium, linear_fp, nonlocal_fp, landau_maxwell,
   landau_coulomb. */
gf_status gf_config_create(const char* scenario, gf_config** out);

/* Parses a flat key=value file ('#' starts a comment).  The file must set
   `scenario`; unknown keys are errors. */
gf_status gf_config_load(const char* path, gf_config** out);

gf_status gf_config_set(gf_config* cfg, const char* key, const char* value);
gf_status gf_config_get(const gf_config* cfg, const char* key,
                        char* buf, size_t buflen);
void gf_config_destroy(gf_config* cfg);

/* Runs the scenario from t_start to t_end, writing per-step diagnostics CSV
   to the configured output path.  `report` may be NULL. */
gf_status gf_run(const gf_config* cfg, gf_report* report);

typedef void (*gf_error_row_fn)(int cells_per_dim, double cell_size,
                                double l1, double l2, double linf, void* user);

/* Runs the scenario once per entry of m_values and tabulates the final-time
   error norms.  row_fn (optional) receives one row per resolution;
   table_path (optional) receives the same table as CSV; orders_out
   (optional, length 3) receives fitted L1/L2/Linf convergence orders, NaN
   when fewer than two resolutions were given. */
gf_status gf_converge(const gf_config* cfg, const int* m_values, int count,
                      gf_error_row_fn row_fn, void* user,
                      const char* table_path, double* orders_out);

typedef void (*gf_check_row_fn)(const char* name, int passed,
                                const char* detail, void* user);

/* Runs the solver's invariant checks at reduced scale: grid symmetry,
   mollifier normalization, kernel algebra, energy-gradient compatibility,
   discrete-gradient identity, velocity-field null spaces, and one-step
   conservation.  Returns GF_OK with *failures_out == 0 when all pass. */
gf_status gf_check(const gf_config* cfg, gf_check_row_fn row_fn, void* user,
                   int* failures_out);

#ifdef __cplusplus
}
#endif

#endif /* GRADFLOW_H */
