/* defectwb: C API for the defect workbench.
 *
 * All entry points return a status code:
 *   0  success (and, for evaluations, every check passed)
 *   1  the operation ran but a check failed
 *   2  usage error (unknown operation, malformed parameters, bad suite dir)
 *
 * Results are returned through an opaque handle; query its JSON payload and
 * pass flag, then release it with dwb_result_free. On status 2 no result is
 * produced and dwb_last_error() describes the problem (thread-local).
 */
#ifndef DEFECTWB_H
#define DEFECTWB_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define DWB_API __declspec(dllexport)
#else
#define DWB_API __attribute__((visibility("default")))
#endif

typedef struct dwb_result dwb_result;

/* Artifact version string, e.g. "1.0.0". */
DWB_API const char* dwb_version(void);

/* Schema version of the JSON payloads. */
DWB_API int dwb_schema_version(void);

/* Run one operation. `op` is a scenario operation name ("collapse",
 * "fact-line", "scalar-defect", "monodromy", "bf-lagrangians", "wilson",
 * "ym", "monopole", "dyonic", "annulus", "domain-wall"); `params_json` is a
 * JSON object of parameters (NULL or "" for defaults; an optional "name"
 * field labels the report). */
DWB_API int dwb_eval(const char* op, const char* params_json, dwb_result** out);

/* Run every scenario file in a directory with up to `jobs` worker threads.
 * The result JSON is the canonical aggregate report (no durations). */
DWB_API int dwb_run_suite(const char* dir, int jobs, dwb_result** out);

/* Accessors. The returned string is owned by the result handle. */
DWB_API const char* dwb_result_json(const dwb_result* r);
DWB_API int dwb_result_passed(const dwb_result* r);
DWB_API void dwb_result_free(dwb_result* r);

/* Global numeric tolerance (default 1e-9). Returns 0, or 2 if eps <= 0. */
DWB_API int dwb_set_tolerance(double eps);
DWB_API double dwb_get_tolerance(void);

/* Message for the most recent status-2 failure on this thread. */
DWB_API const char* dwb_last_error(void);

#ifdef __cplusplus
}
#endif

#endif /* DEFECTWB_H */
