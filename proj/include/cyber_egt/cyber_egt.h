/* C interface to the attacker-defender evolutionary game library. */
#ifndef CYBER_EGT_H
#define CYBER_EGT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CEGT_API __declspec(dllexport)
#else
#define CEGT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cegt_status {
  CEGT_OK = 0,
  CEGT_ERR_INVALID_ARGUMENT = 1, /* null pointer, bad index, bad option value */
  CEGT_ERR_CONFIG = 2,           /* invalid sampler / integrator / abm configuration */
  CEGT_ERR_CONSTRAINT = 3,       /* a parameter constraint was violated */
  CEGT_ERR_COMPUTE = 4,          /* integration or analysis failure */
  CEGT_ERR_IO = 5,               /* output directory or file could not be written */
  CEGT_ERR_INTERNAL = 6
} cegt_status;

typedef struct cegt_params {
  double w, c_a, c_d, b_a, b_d, v;
  double m, n, p, s;
} cegt_params;

typedef struct cegt_state {
  double beta;  /* frequency of Defence */
  double alpha; /* frequency of Attack */
} cegt_state;

typedef enum cegt_kind { CEGT_E1 = 0, CEGT_E2 = 1, CEGT_E3 = 2, CEGT_E4 = 3, CEGT_E5 = 4 } cegt_kind;

typedef enum cegt_stability {
  CEGT_STABLE = 0,
  CEGT_UNSTABLE = 1,
  CEGT_SADDLE = 2,
  CEGT_NON_HYPERBOLIC = 3
} cegt_stability;

typedef struct cegt_fitness {
  double f_no_defence, f_defence, f_no_attack, f_attack, mean_defender, mean_attacker;
} cegt_fitness;

typedef struct cegt_equilibrium {
  int kind; /* cegt_kind */
  cegt_state location;
  double j11, j12, j21, j22;
  double lambda1_re, lambda1_im, lambda2_re, lambda2_im;
  int classification; /* cegt_stability */
} cegt_equilibrium;

typedef struct cegt_integrator {
  double step;
  double horizon;
  double convergence_tol;
  size_t record_stride;
} cegt_integrator;

typedef struct cegt_sampler {
  size_t count;
  uint64_t master_seed;
  double f_u, f_s;
  double b_a_upper;
  unsigned threads;
} cegt_sampler;

typedef struct cegt_abm_config {
  size_t population_size;
  double selection_strength;
  double mutation_rate;
  size_t steps;
  size_t burn_in;
  uint64_t seed;
  cegt_state initial_state;
  size_t record_every;
} cegt_abm_config;

typedef struct cegt_game_record {
  size_t index;
  cegt_params params;
  uint32_t stable_mask; /* bit k set <=> cegt_kind k is stable */
  double welfare[4];    /* (NoD,NoA), (NoD,A), (D,NoA), (D,A) */
  int interior_present;
  int hyperbolic;
} cegt_game_record;

/* Headline aggregates; full tables are available through cegt_ensemble_write. */
typedef struct cegt_summary {
  size_t count;
  size_t stable_count_distribution[4]; /* 0, 1, 2, 3+ */
  size_t kind_counts[5];
  double kind_ratios[5];
  double correlation[4][4]; /* columns E3, E2, E4, total; NaN when undefined */
  size_t v_curves[5][10];
  double welfare_pair_means[4];
} cegt_summary;

/* Output format selection bits for the write functions. */
#define CEGT_FORMAT_CSV 1u
#define CEGT_FORMAT_JSON 2u
#define CEGT_FORMAT_SVG 4u

typedef struct cegt_game cegt_game;
typedef struct cegt_trajectory cegt_trajectory;
typedef struct cegt_ensemble cegt_ensemble;
typedef struct cegt_abm_result cegt_abm_result;

CEGT_API const char* cegt_version(void);
/* Message for the most recent failure on the calling thread. */
CEGT_API const char* cegt_last_error(void);
/* Violated constraint text (e.g. "c_a < w") after CEGT_ERR_CONSTRAINT, else "". */
CEGT_API const char* cegt_last_constraint(void);

CEGT_API void cegt_default_integrator(cegt_integrator* out);
CEGT_API void cegt_default_sampler(cegt_sampler* out);
CEGT_API void cegt_default_abm(cegt_abm_config* out);

CEGT_API cegt_status cegt_game_create(const cegt_params* params, cegt_game** out);
CEGT_API void cegt_game_destroy(cegt_game* game);
CEGT_API cegt_status cegt_game_params(const cegt_game* game, cegt_params* out);
CEGT_API cegt_status cegt_game_with_fines(const cegt_game* game, double f_u, double f_s, cegt_game** out);

CEGT_API cegt_status cegt_payoff(const cegt_game* game, int defence, int attack, double* defender, double* attacker);
CEGT_API cegt_status cegt_welfare(const cegt_game* game, int defence, int attack, double* out);
CEGT_API cegt_status cegt_fitness_at(const cegt_game* game, cegt_state state, cegt_fitness* out);
CEGT_API cegt_status cegt_field(const cegt_game* game, cegt_state state, double* d_beta, double* d_alpha);
/* out receives resolution*resolution entries of {beta, alpha, d_beta, d_alpha}. */
CEGT_API cegt_status cegt_field_grid(const cegt_game* game, int resolution, double* out, size_t capacity);

/* Fills up to 5 reports (corners, then interior when present). */
CEGT_API cegt_status cegt_analyze(const cegt_game* game, cegt_equilibrium out[5], size_t* count);
CEGT_API cegt_status cegt_stable_mask(const cegt_game* game, uint32_t* mask);
CEGT_API cegt_status cegt_interior(const cegt_game* game, int* present, cegt_state* out);

CEGT_API cegt_status cegt_integrate(const cegt_game* game, cegt_state start, const cegt_integrator* settings,
                                    cegt_trajectory** out);
CEGT_API void cegt_trajectory_destroy(cegt_trajectory* t);
CEGT_API size_t cegt_trajectory_size(const cegt_trajectory* t);
CEGT_API cegt_status cegt_trajectory_sample(const cegt_trajectory* t, size_t i, double* time, cegt_state* state);
CEGT_API int cegt_trajectory_converged(const cegt_trajectory* t);
CEGT_API cegt_state cegt_trajectory_final(const cegt_trajectory* t);

CEGT_API cegt_status cegt_ensemble_run(const cegt_sampler* config, cegt_ensemble** out);
CEGT_API void cegt_ensemble_destroy(cegt_ensemble* e);
CEGT_API size_t cegt_ensemble_size(const cegt_ensemble* e);
CEGT_API cegt_status cegt_ensemble_record(const cegt_ensemble* e, size_t i, cegt_game_record* out);
CEGT_API cegt_status cegt_ensemble_summary(const cegt_ensemble* e, cegt_summary* out);
CEGT_API uint64_t cegt_ensemble_digest(const cegt_ensemble* e);

CEGT_API cegt_status cegt_abm_run(const cegt_game* game, const cegt_abm_config* config, cegt_abm_result** out);
CEGT_API void cegt_abm_destroy(cegt_abm_result* r);
CEGT_API cegt_status cegt_abm_means(const cegt_abm_result* r, double* mean_beta, double* mean_alpha);
CEGT_API size_t cegt_abm_samples(const cegt_abm_result* r);

/* Writers. provenance_json is the resolved configuration echoed into every artifact. */
CEGT_API cegt_status cegt_prepare_output(const char* dir);
CEGT_API cegt_status cegt_analyze_text(const cegt_game* game, char* buf, size_t capacity, size_t* needed);
CEGT_API cegt_status cegt_analyze_write(const cegt_game* game, const char* dir, const char* provenance_json,
                                        uint64_t seed, unsigned formats);
CEGT_API cegt_status cegt_ensemble_write(const cegt_ensemble* e, const char* dir, const char* provenance_json,
                                         unsigned formats);
/* Runs one zero-draw-identical ensemble per fine level (f_u = f_s = level) and writes the tables. */
CEGT_API cegt_status cegt_fines_write(const cegt_sampler* base, const double* levels, size_t n_levels,
                                      const char* dir, const char* provenance_json, unsigned formats);
CEGT_API cegt_status cegt_phase_write(const cegt_game* game, int resolution, const cegt_state* starts,
                                      size_t n_starts, const cegt_integrator* settings, const char* dir,
                                      const char* provenance_json, unsigned formats);
CEGT_API cegt_status cegt_abm_write(const cegt_abm_result* r, const char* dir, const char* provenance_json,
                                    uint64_t seed, unsigned formats);

#ifdef __cplusplus
}
#endif

#endif
