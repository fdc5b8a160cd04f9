#ifndef GCONV_GCONV_H
#define GCONV_GCONV_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define GC_API __declspec(dllexport)
#else
#define GC_API __attribute__((visibility("default")))
#endif

/* Status codes returned by every fallible call. GC_OK is 0; the remaining
 * values are stable and never reused. */
typedef enum gc_status {
  GC_OK = 0,
  GC_INVALID_ARGUMENT = 1,
  GC_DIMENSION_MISMATCH = 2,
  GC_NOT_DIVISIBLE = 3,
  GC_METRIC_GROUP_MISMATCH = 4,
  GC_UNSUPPORTED_COMBINATION = 5,
  GC_INVALID_METRIC = 6,
  GC_NOT_A_HOMOMORPHISM = 7,
  GC_GROUP_MISMATCH = 8,
  GC_RHO_NOT_CERTIFIED_BELOW_ONE = 9,
  GC_NOT_COMPLETE = 10,
  GC_NO_CONVERGENCE_WITHIN_BUDGET = 11,
  GC_S_NOT_INVERTIBLE = 12,
  GC_UNSUPPORTED_MIXED_SUM = 13,
  GC_NOT_FINITE = 14,
  GC_NOT_ENUMERABLE = 15,
  GC_EMPTY_SET = 16,
  GC_UNSUPPORTED_REPRESENTATION = 17,
  GC_GENERATOR_EXHAUSTED = 18,
  GC_PARSE_ERROR = 19,
  GC_VALIDATION_ERROR = 20,
  GC_TOO_LARGE = 21,
  GC_INTERNAL = 99
} gc_status;

typedef struct gc_session gc_session;
typedef struct gc_report gc_report;

GC_API const char* gc_version(void);

/* Sessions. On failure *out is left NULL and gc_last_error() describes why. */
GC_API gc_status gc_session_load_file(const char* path, gc_session** out);
GC_API gc_status gc_session_load_string(const char* text, gc_session** out);
GC_API void gc_session_free(gc_session* s);
/* Canonical JSON text; release with gc_string_free. */
GC_API gc_status gc_session_to_json(const gc_session* s, char** out);
/* name is one of n0, horizon, budget, seed, max_iter, n_max. */
GC_API gc_status gc_session_set_param(gc_session* s, const char* name, const char* value);

/* Runs one subcommand (args[0] is its name, e.g. "mu", "verify"). A report is
 * produced for every successful dispatch, including Refuted verdicts. */
GC_API gc_status gc_run(const gc_session* s, const char* const* args, size_t nargs, gc_report** out);
GC_API int gc_report_exit_code(const gc_report* r);
GC_API const char* gc_report_text(const gc_report* r);
GC_API const char* gc_report_json(const gc_report* r);
GC_API void gc_report_free(gc_report* r);

GC_API void gc_string_free(char* s);

/* Details of the most recent failure on this thread. */
GC_API const char* gc_last_error(void);
/* JSON record {error, message, cause?} of that failure. */
GC_API const char* gc_last_error_json(void);
GC_API gc_status gc_last_error_cause(void);
GC_API const char* gc_status_name(gc_status code);
/* The process exit code the command-line tool uses for a status. */
GC_API int gc_exit_code_for_status(gc_status code);

GC_API size_t gc_property_count(void);
GC_API const char* gc_property_name(size_t i);

#ifdef __cplusplus
}
#endif

#endif
