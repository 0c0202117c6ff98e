#ifndef TWOSTEP_CAPI_H
#define TWOSTEP_CAPI_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ts_status {
  TS_OK = 0,
  TS_ERR_INVALID = 1, /* bad arguments or configuration */
  TS_ERR_IO = 2,      /* file read/write failure */
  TS_ERR_DIVERGED = 3 /* divergence where it is not an expected outcome */
} ts_status;

/* Message for the most recent failure on this thread. */
const char* ts_last_error(void);

/* ---- problem handle ---------------------------------------------------- */

typedef struct ts_problem ts_problem;

/* Random instance: eigenvalues (all > 0), random orthogonal basis and
 * optimum, start at distance r. */
ts_problem* ts_problem_create(const double* eigenvalues, int dim, double r,
                              uint64_t seed);
void ts_problem_destroy(ts_problem* problem);
int ts_problem_dim(const ts_problem* problem);
double ts_problem_largest_eigenvalue(const ts_problem* problem);

/* ---- direct algorithm runs --------------------------------------------- */

/* noise_kind: "none" | "unstructured" (noise_param = tr C, isotropic)
 *           | "structured" (noise_param = sigma). */
ts_status ts_run_unified(const ts_problem* problem, double alpha, double beta,
                         int64_t horizon, const char* noise_kind,
                         double noise_param, uint64_t seed,
                         double* excess_out /* horizon + 1 entries */,
                         int* diverged_out);

/* Exact expected excess from the moment engine (no sampling). */
ts_status ts_expected_excess(const ts_problem* problem, double alpha,
                             double beta, const char* noise_kind,
                             double noise_param, int64_t horizon,
                             double* value_out);

/* ---- spectral queries --------------------------------------------------- */

/* class_out: 0 real distinct, 1 complex pair, 2 coalescing;
 * stability_out: 0 strictly stable, 1 marginally stable, 2 unstable. */
ts_status ts_classify_mode(double alpha, double beta, double h, int* class_out,
                           int* stability_out, double* max_root_modulus_out);

/* ---- bound evaluation --------------------------------------------------- */

ts_status ts_iterate_bound(double alpha, double beta, double h, double eta1,
                           int64_t n, double* value_out,
                           int* preconditions_met_out);

/* ---- experiment commands (CLI back end) --------------------------------- */

/* seed_override/reps_override < 0 keep the config file values. */
ts_status ts_cmd_run(const char* config_path, int64_t seed_override,
                     int reps_override, const char* out_dir);

ts_status ts_cmd_stability_map(double alpha_min, double alpha_max,
                               double beta_min, double beta_max, double h,
                               int resolution, const char* out_path);

/* selector: "iterate" | "noiseless" | "unstructured" | "structured". */
ts_status ts_cmd_bounds_check(const char* selector, int count, uint64_t seed,
                              const char* out_path);

/* regime: "first" | "second". */
ts_status ts_cmd_lower_bound(const char* regime, const int64_t* ns,
                             int ns_count, const char* out_path);

ts_status ts_cmd_compare(int dim, int spectrum_power, double r, double sigma,
                         int64_t horizon, int replications, int anytime,
                         uint64_t seed, const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif /* TWOSTEP_CAPI_H */
