/*
 * cpl — existence and long-term stability of voltage equilibria in power
 * systems with constant power loads.
 *
 * C interface of the shared library. All functions are thread-safe as long as
 * each handle is used from one thread at a time; error detail for the calling
 * thread is available via cpl_last_error().
 */
#ifndef CPL_H
#define CPL_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CPL_API __declspec(dllexport)
#else
#define CPL_API __attribute__((visibility("default")))
#endif

typedef enum cpl_status {
    CPL_OK = 0,
    CPL_ERROR_ARGUMENT = 1,    /* null pointer / bad parameter */
    CPL_ERROR_PARSE = 2,       /* malformed document or network spec */
    CPL_ERROR_VALIDATION = 3,  /* system violates the model assumptions */
    CPL_ERROR_UNSUPPORTED = 4, /* operation not available for this system */
    CPL_ERROR_NUMERIC = 5,     /* computation failed */
    CPL_ERROR_INTERNAL = 6
} cpl_status;

typedef enum cpl_outcome_kind {
    CPL_OUTCOME_DOMINANT = 0,       /* dominant equilibrium found and certified */
    CPL_OUTCOME_NO_EQUILIBRIUM = 1, /* a coordinate collapsed in finite time */
    CPL_OUTCOME_INCONCLUSIVE = 2
} cpl_outcome_kind;

/* Opaque handles. */
typedef struct cpl_system_t cpl_system_t;
typedef struct cpl_analysis_t cpl_analysis_t;

typedef struct cpl_analysis_options {
    double seed_safety;        /* scaling headroom for the seed, > 1 (1.05) */
    double rel_tol;            /* integrator relative tolerance (1e-10) */
    double abs_tol;            /* absolute tolerance; <= 0 selects automatic */
    double collapse_threshold; /* collapse fraction of the seed (1e-6) */
    double converge_tol;       /* |f|_inf stop, relative to max(1,|w|_inf) (1e-8) */
    double max_time;           /* integration horizon (1e4) */
    long max_steps;            /* accepted + rejected step budget */
    int record_trajectory;     /* keep all accepted samples (1) */
} cpl_analysis_options;

typedef struct cpl_sweep_options {
    int axis_i;  /* 1-based indices into b, distinct */
    int axis_j;
    double lo_i, hi_i;
    int steps_i; /* >= 2 */
    double lo_j, hi_j;
    int steps_j;
    int workers;         /* parallel cell workers, >= 1 */
    int refine_boundary; /* also emit bisected boundary points */
} cpl_sweep_options;

CPL_API const char* cpl_version(void);

/* Message for the most recent failure on this thread; empty if none. */
CPL_API const char* cpl_last_error(void);

/* Frees any string returned through a char** out parameter. */
CPL_API void cpl_string_free(char* s);

/* Parses a JSON document with a top-level "model" tag (raw | ac | hvdc |
 * dc_microgrid), reduces it to canonical form and validates it. A system that
 * fails validation still parses; interrogate cpl_system_passed_validation. */
CPL_API cpl_status cpl_system_from_json(const char* text, cpl_system_t** out);
CPL_API void cpl_system_free(cpl_system_t* sys);

CPL_API int cpl_system_dim(const cpl_system_t* sys);
CPL_API const char* cpl_system_model(const cpl_system_t* sys);
CPL_API int cpl_system_passed_validation(const cpl_system_t* sys);
CPL_API cpl_status cpl_system_validation_json(const cpl_system_t* sys, char** out_json);
CPL_API cpl_status cpl_system_canonical_json(const cpl_system_t* sys, char** out_json);

CPL_API cpl_analysis_options cpl_analysis_options_default(void);

/* Runs seed construction, characteristic integration, refinement and the
 * stability certificate. Fails with CPL_ERROR_VALIDATION when the system did
 * not pass validation. */
CPL_API cpl_status cpl_analyze(const cpl_system_t* sys, const cpl_analysis_options* opts,
                               cpl_analysis_t** out);
CPL_API void cpl_analysis_free(cpl_analysis_t* analysis);

CPL_API cpl_outcome_kind cpl_analysis_outcome(const cpl_analysis_t* analysis);

/* Copies the dominant equilibrium into buf (length >= n). Fails with
 * CPL_ERROR_UNSUPPORTED unless the outcome is dominant. */
CPL_API cpl_status cpl_analysis_x_max(const cpl_analysis_t* analysis, double* buf, int len);

/* Full JSON report. trajectory_file, when non-null, is echoed into the
 * report; with_timings = 0 yields byte-identical output for identical runs. */
CPL_API cpl_status cpl_analysis_report_json(const cpl_analysis_t* analysis, int with_timings,
                                            const char* trajectory_file, char** out_json);

/* CSV of the accepted integration steps: header t,x1,...,xn. */
CPL_API cpl_status cpl_analysis_trajectory_csv(const cpl_analysis_t* analysis, char** out_csv);

/* Independent equilibrium enumeration, n <= 2 only (CPL_ERROR_UNSUPPORTED
 * otherwise). grid_density <= 0 selects the default (400). */
CPL_API cpl_status cpl_oracle_json(const cpl_system_t* sys, int grid_density, char** out_json);

CPL_API cpl_sweep_options cpl_sweep_options_default(void);

/* Classifies a 2-axis grid over b. out_boundary_csv may be NULL; when the
 * refine_boundary option is set and it is non-null it receives bisected
 * boundary points. */
CPL_API cpl_status cpl_sweep_csv(const cpl_system_t* sys, const cpl_sweep_options* sweep_opts,
                                 const cpl_analysis_options* opts, char** out_csv,
                                 char** out_boundary_csv);

#ifdef __cplusplus
}
#endif

#endif /* CPL_H */
