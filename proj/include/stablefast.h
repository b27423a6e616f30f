/* stablefast — Monte Carlo laboratory for two-time-scale SDEs driven by
 * alpha-stable noise.
 *
 * C API of the shared library. All entry points are thread-safe; handles are
 * opaque and must not be shared across threads without external locking.
 * Functions return sfa_status; on failure, sfa_last_error() gives a
 * thread-local message.
 */
#ifndef STABLEFAST_H
#define STABLEFAST_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sfa_status {
    SFA_OK = 0,
    SFA_ERR_INVALID_ARG = 1,   /* bad pointer / size */
    SFA_ERR_DOMAIN = 2,        /* parameter outside its mathematical domain */
    SFA_ERR_CONFIG = 3,        /* unknown key, missing key, bad value */
    SFA_ERR_NONFINITE = 4,     /* a state became NaN/Inf */
    SFA_ERR_STIFFNESS = 5,     /* step size violates h <= eps/20 */
    SFA_ERR_TRUNCATION = 6,    /* corrector tail above tolerance */
    SFA_ERR_DEGENERATE_FIT = 7,
    SFA_ERR_RANGE = 8,         /* tabulated drift evaluated out of range */
    SFA_ERR_IO = 9,
    SFA_ERR_INTERNAL = 99
} sfa_status;

/* Library version / build identifier (static storage). */
const char* sfa_version(void);

/* Name of a status code (static storage). */
const char* sfa_status_name(sfa_status status);

/* Message of the last error on this thread; empty string if none. */
const char* sfa_last_error(void);

/* ------------------------------------------------------------------ *
 * Experiments: configure with key=value pairs, run, read the summary. *
 * ------------------------------------------------------------------ */

typedef struct sfa_experiment sfa_experiment; /* opaque */

/* kind: sample | simulate | frozen | bbar | strong-rate | weak-rate |
 *       poisson | oracle | validate                                     */
sfa_experiment* sfa_experiment_create(const char* kind);
void sfa_experiment_destroy(sfa_experiment* exp);

/* Queue one key=value entry; later entries override earlier ones. */
sfa_status sfa_experiment_set(sfa_experiment* exp, const char* key,
                              const char* value);

/* Queue every entry of a key=value config file (flags set afterwards
 * override the file). */
sfa_status sfa_experiment_load_config(sfa_experiment* exp, const char* path);

/* Validate the configuration and run; artifacts are written under the
 * resolved output directory (key out_dir, else $STABLEFAST_OUT_DIR, else
 * the working directory). */
sfa_status sfa_experiment_run(sfa_experiment* exp);

/* Summary JSON of the last successful run (owned by the handle, valid until
 * the next run or destroy). NULL before the first run. */
const char* sfa_experiment_summary_json(const sfa_experiment* exp);

/* 1 when the last run was a `validate` experiment with failing checks. */
int sfa_experiment_validation_failed(const sfa_experiment* exp);

/* ------------------------------------------------------ *
 * Direct sampling into caller buffers (no handle needed). *
 * ------------------------------------------------------ */

/* n standard symmetric alpha-stable draws, char. function exp(-|h|^alpha). */
sfa_status sfa_sample_sym_stable(double alpha, uint64_t seed, uint64_t stream,
                                 size_t n, double* out);

/* n isotropic increments over time dt, row-major n x dim. */
sfa_status sfa_sample_isotropic(double alpha, int dim, double dt,
                                uint64_t seed, uint64_t stream, size_t n,
                                double* out);

/* Closed-form stable scale of Z^eps_t for the solvable example. */
sfa_status sfa_sigma_scale(double alpha, double eps, double t, double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* STABLEFAST_H */
