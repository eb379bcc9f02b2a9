/* C interface to the curvlie library.
 *
 * Handles are opaque; every function returns CURVLIE_OK or a negative
 * error code. curvlie_last_error() holds the message of the last failure
 * on the calling thread.
 */
#ifndef CURVLIE_H
#define CURVLIE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CURVLIE_API __declspec(dllexport)
#else
#define CURVLIE_API __attribute__((visibility("default")))
#endif

enum curvlie_status {
  CURVLIE_OK = 0,
  CURVLIE_ERROR_INVALID_ARGUMENT = -1,
  CURVLIE_ERROR_PARSE = -2,
  CURVLIE_ERROR_DIVISION_BY_ZERO = -3,
  CURVLIE_ERROR_SINGULAR = -4,
  CURVLIE_ERROR_VARIABLE_MISMATCH = -5,
  CURVLIE_ERROR_MISSING_VARIABLE = -6,
  CURVLIE_ERROR_BUDGET_EXCEEDED = -7,
  CURVLIE_ERROR_INTERNAL = -8,
  CURVLIE_ERROR_NULL_POINTER = -9,
  CURVLIE_ERROR_BAD_HANDLE = -10
};

enum curvlie_format { CURVLIE_FORMAT_JSON = 0, CURVLIE_FORMAT_TEXT = 1 };

typedef struct curvlie_config_s* curvlie_config_t;
typedef struct curvlie_report_s* curvlie_report_t;

CURVLIE_API const char* curvlie_version(void);
CURVLIE_API const char* curvlie_status_name(int status);
CURVLIE_API const char* curvlie_last_error(void);

/* Run configuration. subcommand is one of curvature, groebner,
 * invariant-space, solve, verify, catalog, or "" for an empty run. */
CURVLIE_API int curvlie_config_init(curvlie_config_t* config, const char* subcommand);
CURVLIE_API int curvlie_config_destroy(curvlie_config_t config);
/* Case label or ideal file. */
CURVLIE_API int curvlie_config_add_argument(curvlie_config_t config, const char* argument);
/* key is "algebra" or "metric". */
CURVLIE_API int curvlie_config_set_input(curvlie_config_t config, const char* key, const char* path);
CURVLIE_API int curvlie_config_set_det_sign(curvlie_config_t config, int det_sign);
/* Rational literal such as "2" or "1/2"; may be called repeatedly. */
CURVLIE_API int curvlie_config_add_r(curvlie_config_t config, const char* r);
CURVLIE_API int curvlie_config_add_q_block(curvlie_config_t config, int q);
CURVLIE_API int curvlie_config_set_jobs(curvlie_config_t config, unsigned jobs);
/* Zero leaves a limit unset. */
CURVLIE_API int curvlie_config_set_budget(curvlie_config_t config, size_t max_pairs, size_t max_monomials,
                                          size_t max_megabytes);
/* name: ricci, nabla-r, signature, certificate, catalog. */
CURVLIE_API int curvlie_config_set_flag(curvlie_config_t config, const char* name, int value);
/* name: eval ("x=1,y=1/2"), lambda ("-10/9*sqrt3"). */
CURVLIE_API int curvlie_config_set_option(curvlie_config_t config, const char* name, const char* value);
CURVLIE_API int curvlie_config_set_verbosity(curvlie_config_t config, int verbosity);

/* Runs the pipeline. Failures inside the pipeline are part of the report
 * (exit code 2); the return value only reports misuse of the API. */
CURVLIE_API int curvlie_run(curvlie_config_t config, curvlie_report_t* report);
CURVLIE_API int curvlie_report_destroy(curvlie_report_t report);
/* 0 = all verified, 1 = residuals or budget stop, 2 = error. */
CURVLIE_API int curvlie_report_exit_code(curvlie_report_t report, int* exit_code);
/* The returned text stays valid until the report is destroyed or rendered again. */
CURVLIE_API int curvlie_report_render(curvlie_report_t report, int format, const char** text, size_t* length);

#ifdef __cplusplus
}
#endif

#endif /* CURVLIE_H */
