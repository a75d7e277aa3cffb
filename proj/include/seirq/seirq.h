/* C interface to the SEIR quadratic-operator library.
 *
 * Conventions:
 *   - every fallible call returns a seirq_status and writes results through
 *     out pointers, which are touched only on SEIRQ_OK;
 *   - a failing call stores a message retrievable with seirq_last_error()
 *     until the next call on the same thread;
 *   - objects returned through handle out-parameters are owned by the caller
 *     and released with the matching _free function (NULL is accepted).
 */
#ifndef SEIRQ_H
#define SEIRQ_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum seirq_status {
  SEIRQ_OK = 0,
  SEIRQ_ERR_INVALID_ARGUMENT = 1, /* malformed input: NULL, NaN, bad sizes */
  SEIRQ_ERR_INADMISSIBLE = 2,     /* parameters outside the admissible region */
  SEIRQ_ERR_DOMAIN = 3,           /* state off the simplex, index range, ... */
  SEIRQ_ERR_DEGENERATE = 4,       /* window too flat for reconstruction */
  SEIRQ_ERR_CONFIG = 5,           /* unusable search box or grid size */
  SEIRQ_ERR_INTERNAL = 6
} seirq_status;

const char* seirq_status_name(seirq_status st);

/* Message for the most recent failure on the calling thread; the empty
 * string after a success or before any call. The pointer stays valid until
 * the next library call on the same thread. */
const char* seirq_last_error(void);

const char* seirq_version(void);

/* ---- model ------------------------------------------------------------- */

typedef struct seirq_params {
  double beta; /* contact-transmission rate */
  double q;    /* exposed-contact scaling */
  double a;    /* incubation rate */
  double b;    /* recovery rate */
} seirq_params;

/* Population fractions; a valid state lies on the 3-simplex. */
typedef struct seirq_state {
  double s, e, i, r;
} seirq_state;

/* Returns the number of violated admissibility conditions (0 = admissible)
 * and, when msg is non-NULL and cap > 0, writes a "; "-joined description,
 * always NUL-terminated and truncated to cap. Returns -1 for NULL p or
 * non-finite fields. */
int seirq_params_validate(const seirq_params* p, char* msg, size_t cap);

/* One day of the SEIR evolution. */
seirq_status seirq_step(const seirq_params* p, const seirq_state* x,
                        seirq_state* out);

/* ---- trajectories ------------------------------------------------------ */

typedef struct seirq_trajectory seirq_trajectory;

seirq_status seirq_simulate(const seirq_params* p, const seirq_state* x0,
                            long steps, seirq_trajectory** out);
void seirq_trajectory_free(seirq_trajectory* t);

/* Steps taken; the trajectory stores days+1 states. -1 for NULL t. */
long seirq_trajectory_days(const seirq_trajectory* t);

seirq_status seirq_trajectory_state(const seirq_trajectory* t, long day,
                                    seirq_state* out);

typedef struct seirq_step_diag {
  double e_decline; /* amount the next step removes from e */
  double i_decline; /* amount the next step removes from i */
  int in_decay;     /* both strictly positive: the epidemic is winding down */
} seirq_step_diag;

seirq_status seirq_trajectory_diag(const seirq_trajectory* t, long day,
                                   seirq_step_diag* out);

/* Earliest day with the largest infectious fraction. */
seirq_status seirq_trajectory_peak(const seirq_trajectory* t, long* day,
                                   double* infectious);

/* First day with i < threshold; *day = -1 if never within the horizon. */
seirq_status seirq_trajectory_completion_day(const seirq_trajectory* t,
                                             double threshold, long* day);

/* First stored day inside the decay region; *day = -1 if none. */
seirq_status seirq_trajectory_decay_entry_day(const seirq_trajectory* t,
                                              long* day);

/* Largest residual of the recovered-series window recurrence. */
seirq_status seirq_trajectory_recurrence_residual(const seirq_trajectory* t,
                                                  double* out);

/* ---- limits ------------------------------------------------------------ */

typedef struct seirq_limit_report {
  seirq_state limit; /* e and i clamped to 0 once converged */
  long iterations;
  int converged;
  double residual_ei; /* e + i at the stopping state */
  double residual_ds; /* last per-step decrease of s */
  int bound_applicable; /* beta > 0 and x0 not a fixed point */
  int bound_ok;         /* limiting s below the critical threshold */
  double critical;      /* NaN when not applicable */
} seirq_limit_report;

/* Iterates until e + i and the per-step drop of s fall below tol, at most
 * max_iter steps. Pass tol <= 0 or max_iter <= 0 to use the defaults
 * (1e-10, 1000000). Exhausting the budget reports converged = 0, not an
 * error. */
seirq_status seirq_find_limit(const seirq_params* p, const seirq_state* x0,
                              double tol, long max_iter,
                              seirq_limit_report* out);

typedef enum seirq_decay_result {
  SEIRQ_DECAY_FOUND = 0,
  SEIRQ_DECAY_NOT_FOUND = 1,     /* not within max_iter days */
  SEIRQ_DECAY_NOT_APPLICABLE = 2 /* x0 is a fixed point */
} seirq_decay_result;

/* Smallest day whose state lies in the decay region, scanning at most
 * max_iter days from x0. *day is written only for SEIRQ_DECAY_FOUND. */
seirq_status seirq_decay_entry_day(const seirq_params* p,
                                   const seirq_state* x0, long max_iter,
                                   seirq_decay_result* result, long* day);

/* ---- spectra of fixed points ------------------------------------------- */

enum {
  SEIRQ_REGIME_BELOW = 0, /* alpha below the critical threshold */
  SEIRQ_REGIME_AT = 1,
  SEIRQ_REGIME_ABOVE = 2,
  SEIRQ_REGIME_NONE = 3 /* beta == 0: no threshold exists */
};

const char* seirq_regime_name(int regime);

typedef struct seirq_spectral_report {
  double alpha;
  double mu1, mu2, mu3; /* mu1 = 1 always; mu2 carries -sqrt(disc) */
  double discriminant;
  double critical; /* NaN when regime == SEIRQ_REGIME_NONE */
  int regime;
  int dim_stable, dim_center, dim_unstable;
  int hyperbolic; /* always 0: mu1 sits on the unit circle */
} seirq_spectral_report;

/* Classifies the fixed point (alpha, 0, 0, 1-alpha). */
seirq_status seirq_spectral(const seirq_params* p, double alpha,
                            seirq_spectral_report* out);

/* The threshold a*b/(beta*(a + b*q)); SEIRQ_ERR_DOMAIN when beta == 0. */
seirq_status seirq_critical_alpha(const seirq_params* p, double* out);

/* ---- quadratic-operator tensor ----------------------------------------- */

typedef struct seirq_tensor seirq_tensor;

/* Accepts inadmissible parameters on purpose; verification reports the
 * resulting axiom violations. Only non-finite fields are rejected. */
seirq_status seirq_tensor_build(const seirq_params* p, seirq_tensor** out);
void seirq_tensor_free(seirq_tensor* t);

/* Entry P_ij,k with 1-based indices. */
seirq_status seirq_tensor_get(const seirq_tensor* t, int i, int j, int k,
                              double* out);

/* Evaluates the quadratic form at x (must be on the simplex). */
seirq_status seirq_tensor_apply(const seirq_tensor* t, const seirq_state* x,
                                seirq_state* out);

typedef struct seirq_tensor_report {
  int symmetry_ok, nonneg_ok, stochastic_ok;
  double worst_symmetry;   /* largest |P_ij,k - P_ji,k| */
  double worst_negativity; /* magnitude of the most negative entry */
  double worst_stochastic; /* largest |sum_k P_ij,k - 1| */
} seirq_tensor_report;

/* Checks the three tensor axioms at tolerance tol (pass tol <= 0 for the
 * default 1e-12). Violations are reported, not raised. */
seirq_status seirq_tensor_verify(const seirq_tensor* t, double tol,
                                 seirq_tensor_report* out);

/* Text dump, one "i j k value" line per nonzero entry with i <= j. Always
 * sets *needed to the full length including the NUL terminator; copies at
 * most cap bytes (NUL-terminated) when buf is non-NULL. Call with buf NULL
 * to size the buffer. */
seirq_status seirq_tensor_format(const seirq_tensor* t, char* buf, size_t cap,
                                 size_t* needed);

/* ---- recovered-series identities --------------------------------------- */

/* Recovers (s, e, i) at the first day of a window of four consecutive
 * recovered fractions. Requires a, b, beta > 0; SEIRQ_ERR_DEGENERATE when
 * the window is too flat to determine s. */
seirq_status seirq_reconstruct(const seirq_params* p, const double v[4],
                               double* s, double* e, double* i);

/* Right side of the window recurrence a*b*v(n+3) = R(v(n),v(n+1),v(n+2)). */
seirq_status seirq_recurrence_rhs(const seirq_params* p, double v0, double v1,
                                  double v2, double* out);

/* Largest |a*b*v(n+3) - R(...)| over all windows; n must be >= 4. */
seirq_status seirq_recurrence_residual(const seirq_params* p, const double* v,
                                       size_t n, double* out);

/* ---- calibration ------------------------------------------------------- */

typedef struct seirq_axis {
  double lo, hi;
  int points; /* evenly spaced; points == 1 pins the axis at lo */
} seirq_axis;

typedef struct seirq_search_box {
  seirq_axis a, b, beta, q;
} seirq_search_box;

seirq_search_box seirq_default_search_box(void);

typedef struct seirq_target {
  seirq_state x0;
  long peak_day;
  double population; /* completion threshold is 1/population */
  int has_completion_day;
  long completion_day; /* read only when has_completion_day != 0 */
} seirq_target;

/* Day-mismatch loss of one candidate against the target. */
seirq_status seirq_objective(const seirq_params* p, const seirq_target* t,
                             double* loss);

typedef struct seirq_fit_result seirq_fit_result;

/* Deterministic exhaustive grid search over the box. */
seirq_status seirq_fit(const seirq_search_box* box, const seirq_target* t,
                       seirq_fit_result** out);
void seirq_fit_result_free(seirq_fit_result* r);

/* Number of ranked entries (best first, at most five). -1 for NULL r. */
long seirq_fit_result_size(const seirq_fit_result* r);

/* Grid points evaluated. -1 for NULL r. */
long seirq_fit_result_evaluations(const seirq_fit_result* r);

seirq_status seirq_fit_result_entry(const seirq_fit_result* r, long rank,
                                    seirq_params* params, double* loss);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SEIRQ_H */
