#ifndef TANGLECAT_H
#define TANGLECAT_H

/* Generated by cbindgen from crates/tanglecat-ffi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TcBasis {
  TC_BASIS_NATIVE = 0,
  TC_BASIS_DUAL = 1,
  TC_BASIS_MODIFIED_RIGHT = 2,
  TC_BASIS_MODIFIED_LEFT = 3,
} TcBasis;

typedef enum TcFramework {
  TC_FRAMEWORK_RT = 0,
  TC_FRAMEWORK_VIRO = 1,
  TC_FRAMEWORK_OSZ = 2,
} TcFramework;

typedef enum TcGrading {
  TC_GRADING_SINGLE = 0,
  TC_GRADING_MULTI = 1,
} TcGrading;

typedef enum TcSide {
  TC_SIDE_RIGHT = 0,
  TC_SIDE_LEFT = 1,
} TcSide;

typedef enum TcStatus {
  TC_STATUS_OK = 0,
  TC_STATUS_NULL_POINTER = 1,
  TC_STATUS_INVALID_UTF8 = 2,
  TC_STATUS_PARSE = 3,
  TC_STATUS_INVALID_ARGUMENT = 4,
  TC_STATUS_COMPUTE = 5,
  TC_STATUS_CHECK_FAILED = 6,
} TcStatus;

/**
 * A parsed tangle diagram.
 */
typedef struct TcDiagram TcDiagram;

/**
 * A composite matrix.
 */
typedef struct TcMatrix TcMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *tc_last_error(void);

/**
 * Parse diagram text into `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TcStatus tc_diagram_parse(const char *text, struct TcDiagram **out);

/**
 * # Safety
 * `d` must come from `tc_diagram_parse` and not be freed twice.
 */
void tc_diagram_free(struct TcDiagram *d);

/**
 * 1 if the diagram is a closed knot diagram ending in the terminal
 * minimum, 0 otherwise (including NULL).
 *
 * # Safety
 * `d` must be NULL or a live handle.
 */
int32_t tc_diagram_is_closed(const struct TcDiagram *d);

/**
 * Number of events in the diagram, or -1 for NULL.
 *
 * # Safety
 * `d` must be NULL or a live handle.
 */
int64_t tc_diagram_num_events(const struct TcDiagram *d);

/**
 * Normalized Alexander polynomial of a closed diagram, e.g. `t - 1 + t^-1`.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum TcStatus tc_alexander(const struct TcDiagram *d, char **out);

/**
 * Compose the diagram in the given framework. `basis` is ignored for
 * `Osz`, which always uses idempotents on the `trunc` side.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum TcStatus tc_eval(const struct TcDiagram *d,
                      enum TcFramework framework,
                      enum TcBasis basis,
                      enum TcSide trunc,
                      enum TcGrading grading,
                      struct TcMatrix **out);

/**
 * Number of rows and columns of a matrix.
 *
 * # Safety
 * `m` must be a live handle; `rows` and `cols` valid pointers.
 */
enum TcStatus tc_matrix_shape(const struct TcMatrix *m, size_t *rows, size_t *cols);

/**
 * Entry at (row subset, column subset) in canonical rendering.
 *
 * # Safety
 * `m` must be a live handle and `out` a valid pointer.
 */
enum TcStatus tc_matrix_entry(const struct TcMatrix *m, uint64_t row, uint64_t col, char **out);

/**
 * The matrix as JSON: `{domain, codomain, entries: [[row, col, poly]]}`.
 *
 * # Safety
 * `m` must be a live handle and `out` a valid pointer.
 */
enum TcStatus tc_matrix_json(const struct TcMatrix *m, char **out);

/**
 * # Safety
 * `m` must come from `tc_eval` and not be freed twice.
 */
void tc_matrix_free(struct TcMatrix *m);

/**
 * Run every elementary check with boundaries up to `max_n` points (at most
 * 8). Writes the number of failures to `failures` when non-NULL.
 *
 * # Safety
 * `failures` must be NULL or a valid pointer.
 */
enum TcStatus tc_verify(uint32_t max_n, uint64_t *failures);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void tc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TANGLECAT_H */
