/* C interface to the rangemono library.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Functions return an rmono_status; on failure rmono_last_error() describes
 * the problem for the calling thread. Analysis functions that take an
 * rmono_report** always store a report (also on failure) unless the
 * argument itself is invalid, so callers can render error details.
 */
#ifndef RANGEMONO_H
#define RANGEMONO_H

#include <stddef.h>
#include <stdint.h>

#if defined(RMONO_BUILDING)
#define RMONO_API __attribute__((visibility("default")))
#else
#define RMONO_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rmono_status {
  RMONO_OK = 0,
  RMONO_PARSE = 2,
  RMONO_CAPABILITY = 3,
  RMONO_SINGULAR = 4,
  RMONO_MISMATCH = 5,
  RMONO_INVALID_ARGUMENT = 6,
  RMONO_NONCONVERGENCE = 7,
  RMONO_INCONSISTENT = 8,
  RMONO_NOT_FOUND = 9,
  RMONO_INTERNAL = 10
} rmono_status;

typedef enum rmono_operator_kind { RMONO_LYAPUNOV = 0, RMONO_STEIN = 1 } rmono_operator_kind;
typedef enum rmono_cone { RMONO_CONE_PSD = 0, RMONO_CONE_ORTHANT = 1 } rmono_cone;
typedef enum rmono_tolerance {
  RMONO_TOL_RANK = 0,
  RMONO_TOL_PSD = 1,
  RMONO_TOL_FEAS = 2,
  RMONO_TOL_EQ = 3
} rmono_tolerance;
typedef enum rmono_tri { RMONO_YES = 0, RMONO_NO = 1, RMONO_UNDECIDED = 2 } rmono_tri;

typedef struct rmono_options rmono_options;
typedef struct rmono_matrix rmono_matrix;
typedef struct rmono_report rmono_report;

RMONO_API const char* rmono_version(void);
RMONO_API const char* rmono_status_string(rmono_status status);
RMONO_API const char* rmono_last_error(void);

/* Options: tolerances, iteration cap, seed and the command echo. */
RMONO_API rmono_status rmono_options_create(rmono_options** out);
RMONO_API void rmono_options_destroy(rmono_options* opts);
RMONO_API rmono_status rmono_options_set_tolerance(rmono_options* opts, rmono_tolerance which, double value);
RMONO_API rmono_status rmono_options_set_max_iter(rmono_options* opts, int max_iter);
RMONO_API rmono_status rmono_options_set_seed(rmono_options* opts, uint64_t seed);
RMONO_API rmono_status rmono_options_set_argv(rmono_options* opts, int argc, const char* const* argv);

/* Dense row-major matrices. */
RMONO_API rmono_status rmono_matrix_create(size_t rows, size_t cols, const double* data, rmono_matrix** out);
RMONO_API rmono_status rmono_matrix_parse(const char* text, rmono_matrix** out);
RMONO_API rmono_status rmono_matrix_read(const char* path, rmono_matrix** out);
RMONO_API void rmono_matrix_destroy(rmono_matrix* m);
RMONO_API size_t rmono_matrix_rows(const rmono_matrix* m);
RMONO_API size_t rmono_matrix_cols(const rmono_matrix* m);
/* Copies rows*cols entries into out (capacity in doubles). */
RMONO_API rmono_status rmono_matrix_copy(const rmono_matrix* m, double* out, size_t capacity);

/* Direct decisions. */
RMONO_API rmono_status rmono_trivially_range_monotone(const rmono_options* opts, rmono_operator_kind kind,
                                                      const rmono_matrix* a, rmono_tri* trivial, rmono_tri* range);
RMONO_API rmono_status rmono_matrix_trivially_range_monotone(const rmono_options* opts, const rmono_matrix* a,
                                                             rmono_tri* trivial);
/* Writes A# into out (n*n doubles) when it exists; *exists is 0 or 1. */
RMONO_API rmono_status rmono_group_inverse(const rmono_options* opts, const rmono_matrix* a, int* exists,
                                           double* out, size_t capacity);

/* Rendered analyses. */
RMONO_API rmono_status rmono_classify(const rmono_options* opts, const rmono_matrix* a, rmono_report** out);
RMONO_API rmono_status rmono_operator_analyze(const rmono_options* opts, rmono_operator_kind kind,
                                              const rmono_matrix* a, int analyze, rmono_report** out);
RMONO_API rmono_status rmono_solve(const rmono_options* opts, rmono_operator_kind kind, const rmono_matrix* a,
                                   const rmono_matrix* q, rmono_report** out);
RMONO_API rmono_status rmono_groupinv_report(const rmono_options* opts, const rmono_matrix* a, rmono_report** out);
/* The cone is implied by the file ("vectors" or "matrices"); a mismatch
 * with `cone` is reported as RMONO_INVALID_ARGUMENT. */
RMONO_API rmono_status rmono_feasibility(const rmono_options* opts, rmono_cone cone, const char* basis_path,
                                         rmono_report** out);
RMONO_API rmono_status rmono_reproduce_entry(const rmono_options* opts, const char* id, rmono_report** out);
RMONO_API rmono_status rmono_reproduce_all(const rmono_options* opts, rmono_report** out);
RMONO_API rmono_status rmono_reproduce_table(const rmono_options* opts, rmono_report** out);
/* Report for a failure detected by the caller (for example a bad file). */
RMONO_API rmono_status rmono_report_failure(const rmono_options* opts, const char* command, rmono_status status,
                                            const char* message, rmono_report** out);

RMONO_API rmono_status rmono_report_status(const rmono_report* r);
RMONO_API const char* rmono_report_json(const rmono_report* r);
RMONO_API const char* rmono_report_text(const rmono_report* r);
RMONO_API void rmono_report_destroy(rmono_report* r);

/* Catalog ids, ordered; index past the end yields NULL. */
RMONO_API size_t rmono_catalog_size(void);
RMONO_API const char* rmono_catalog_id(size_t index);

#ifdef __cplusplus
}
#endif

#endif /* RANGEMONO_H */
