#ifndef CORANK_CORANK_H
#define CORANK_CORANK_H

/* C interface to the corank toolkit. Every call returns a crk_status; on
   failure crk_last_error() describes the most recent error on the calling
   thread. Handles are opaque and owned by the caller until freed. Strings
   returned through a handle stay valid until that handle is freed. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CORANK_BUILDING)
#    define CRK_API __declspec(dllexport)
#  else
#    define CRK_API __declspec(dllimport)
#  endif
#else
#  define CRK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum crk_status {
    CRK_OK = 0,
    CRK_ERR_SYNTAX,
    CRK_ERR_UNKNOWN_IDENTIFIER,
    CRK_ERR_UNKNOWN_COORDINATE,
    CRK_ERR_INVALID_CHART,
    CRK_ERR_CHART_MISMATCH,
    CRK_ERR_DEGREE_MISMATCH,
    CRK_ERR_DEGREE_UNDERFLOW,
    CRK_ERR_SINGULAR,
    CRK_ERR_DIVISION_OBSTRUCTED,
    CRK_ERR_BAD_TRANSVERSAL,
    CRK_ERR_NOT_INTEGRABLE,
    CRK_ERR_NOT_TRANSVERSE,
    CRK_ERR_NOT_CORANK_ONE,
    CRK_ERR_DEGENERATE,
    CRK_ERR_DEGENERATE_VOLUME,
    CRK_ERR_INVARIANTS_NOT_VANISHING,
    CRK_ERR_NOT_POISSON_FIELD,
    CRK_ERR_UNDECIDED,
    CRK_ERR_VALIDATION,
    CRK_ERR_IO,
    CRK_ERR_INTERNAL,
    CRK_ERR_ARGUMENT
} crk_status;

typedef enum crk_truth {
    CRK_TRUE = 0,
    CRK_PROBABLY_TRUE = 1,
    CRK_FALSE = 2,
    CRK_UNKNOWN = 3
} crk_truth;

typedef struct crk_options {
    uint64_t seed;
    int trials;
    double tolerance;
    /* Nonzero: the field overrides the problem file's [options]. */
    int has_seed;
    int has_trials;
    int has_tolerance;
    /* Nonzero: report entries carry elapsed_ms (reruns then differ). */
    int timing;
} crk_options;

typedef struct crk_chart crk_chart;
typedef struct crk_form crk_form;
typedef struct crk_multivector crk_multivector;
typedef struct crk_problem crk_problem;
typedef struct crk_report crk_report;

CRK_API const char* crk_version(void);
CRK_API const char* crk_status_name(crk_status status);
CRK_API const char* crk_truth_name(crk_truth truth);
CRK_API const char* crk_last_error(void);
CRK_API void crk_options_init(crk_options* options);

/* Charts. kind is "line" or "angle"; lo/hi are ignored for angles. */
CRK_API crk_status crk_chart_new(crk_chart** out);
CRK_API crk_status crk_chart_add_coordinate(crk_chart* chart, const char* name, const char* kind, double lo, double hi);
CRK_API crk_status crk_chart_add_parameter(crk_chart* chart, const char* name, double lo, double hi);
CRK_API crk_status crk_chart_set_torus_strict(crk_chart* chart, int strict);
CRK_API size_t crk_chart_dim(const crk_chart* chart);
CRK_API void crk_chart_free(crk_chart* chart);

/* Forms and multivector fields, parsed against a chart. degree < 0 accepts
   whatever degree the text has. */
CRK_API crk_status crk_form_parse(const crk_chart* chart, const char* text, int degree, crk_form** out);
CRK_API crk_status crk_multivector_parse(const crk_chart* chart, const char* text, int degree, crk_multivector** out);
CRK_API int crk_form_degree(const crk_form* form);
CRK_API int crk_multivector_degree(const crk_multivector* field);
CRK_API const char* crk_form_str(const crk_form* form);
CRK_API const char* crk_multivector_str(const crk_multivector* field);
CRK_API void crk_form_free(crk_form* form);
CRK_API void crk_multivector_free(crk_multivector* field);

CRK_API crk_status crk_form_d(const crk_form* form, crk_form** out);
CRK_API crk_status crk_form_wedge(const crk_form* a, const crk_form* b, crk_form** out);
CRK_API crk_status crk_form_interior(const crk_multivector* field, const crk_form* form, crk_form** out);
CRK_API crk_status crk_form_lie(const crk_multivector* field, const crk_form* form, crk_form** out);
CRK_API crk_status crk_multivector_schouten(const crk_multivector* a, const crk_multivector* b, crk_multivector** out);
CRK_API crk_status crk_form_is_zero(const crk_form* form, const crk_options* options, crk_truth* out);
CRK_API crk_status crk_multivector_is_zero(const crk_multivector* field, const crk_options* options, crk_truth* out);
/* Verdict of [Π, Π] = 0 for a bivector. */
CRK_API crk_status crk_jacobi(const crk_multivector* bivector, const crk_options* options, crk_truth* out);

/* Problem files. Validation failures return CRK_ERR_VALIDATION with
   "file:line: message" in crk_last_error(). */
CRK_API crk_status crk_problem_load(const char* path, crk_problem** out);
CRK_API crk_status crk_problem_parse(const char* text, const char* name, crk_problem** out);
CRK_API void crk_problem_free(crk_problem* problem);
/* Writes a newly allocated string; release it with crk_string_free. */
CRK_API crk_status crk_problem_render(const crk_problem* problem, char** out);
CRK_API crk_status crk_problem_analyze(const crk_problem* problem, const crk_options* options, crk_report** out);

CRK_API const char* crk_report_json(const crk_report* report);
/* 1 when some analysis returned false, errored or was skipped. */
CRK_API int crk_report_failed(const crk_report* report);
CRK_API void crk_report_free(crk_report* report);

CRK_API void crk_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
