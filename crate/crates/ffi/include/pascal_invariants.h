#ifndef PASCAL_INVARIANTS_H
#define PASCAL_INVARIANTS_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PinvKind {
  PINV_KIND_FIRST = 0,
  PINV_KIND_SECOND = 1,
} PinvKind;

/**
 * Result of every fallible call.
 */
typedef enum PinvStatus {
  PINV_STATUS_OK = 0,
  PINV_STATUS_NULL_ARGUMENT = 1,
  PINV_STATUS_INVALID_UTF8 = 2,
  PINV_STATUS_PARSE = 3,
  PINV_STATUS_INVALID_ARGUMENT = 4,
  PINV_STATUS_ARITHMETIC = 5,
  PINV_STATUS_SUMMATION = 6,
  PINV_STATUS_UNSUPPORTED = 7,
  PINV_STATUS_NETWORK = 8,
  PINV_STATUS_IO = 9,
  PINV_STATUS_PANIC = 10,
} PinvStatus;

typedef enum PinvSummation {
  PINV_SUMMATION_CLASSICAL = 0,
  PINV_SUMMATION_CONTINUED = 1,
} PinvSummation;

typedef enum PinvVerdict {
  PINV_VERDICT_INVARIANT = 0,
  PINV_VERDICT_INVERSE_INVARIANT = 1,
  PINV_VERDICT_NEITHER = 2,
} PinvVerdict;

/**
 * Opaque operator handle.
 */
typedef struct PinvOperator PinvOperator;

/**
 * Opaque sequence handle.
 */
typedef struct PinvSeq PinvSeq;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *pinv_last_error(void);

/**
 * Library version as a static string.
 */
const char *pinv_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void pinv_string_free(char *s);

/**
 * Parses a sequence literal such as `lucas`, `finsupp:[1,0,-2/3]` or
 * `geom:(1,1/2)`.
 *
 * # Safety
 * `literal` must be a NUL-terminated string; `out` must be writable.
 */
enum PinvStatus pinv_seq_parse(const char *literal, struct PinvSeq **out);

/**
 * # Safety
 * `seq` must be null or a handle from this library not yet freed.
 */
void pinv_seq_free(struct PinvSeq *seq);

/**
 * Term `n` as an exact literal (`p/q` or `a+b√d`).
 *
 * # Safety
 * `seq` must be a live handle; `out` must be writable.
 */
enum PinvStatus pinv_seq_term(const struct PinvSeq *seq, size_t n, char **out);

/**
 * The first `depth` terms as a JSON array of exact scalars.
 *
 * # Safety
 * `seq` must be a live handle; `out` must be writable.
 */
enum PinvStatus pinv_seq_prefix_json(const struct PinvSeq *seq, size_t depth, char **out);

/**
 * Classifies a sequence on its first `depth` terms.
 *
 * # Safety
 * `seq` must be a live handle; `verdict` must be writable.
 */
enum PinvStatus pinv_check_invariance(const struct PinvSeq *seq,
                                      enum PinvKind kind,
                                      size_t depth,
                                      enum PinvSummation mode,
                                      enum PinvVerdict *verdict);

/**
 * Applies a pipeline such as `t42c` or `phi(2);t42a` and returns a new
 * sequence handle.
 *
 * # Safety
 * `pipeline` must be a NUL-terminated string, `seq` a live handle and `out`
 * writable.
 */
enum PinvStatus pinv_apply_pipeline(const char *pipeline,
                                    const struct PinvSeq *seq,
                                    enum PinvSummation mode,
                                    struct PinvSeq **out);

/**
 * Builds a named operator (`P`, `PT`, `D`, `J`, `Jinv`, `N`, `M`,
 * `PTdown`, ...). `param` is null for operators without a parameter.
 *
 * # Safety
 * `name` must be a NUL-terminated string, `param` null or one, `out`
 * writable.
 */
enum PinvStatus pinv_operator_new(const char *name, const char *param, struct PinvOperator **out);

/**
 * # Safety
 * `op` must be null or a handle from this library not yet freed.
 */
void pinv_operator_free(struct PinvOperator *op);

/**
 * Entry `(i, j)` as an exact literal.
 *
 * # Safety
 * `op` must be a live handle; `out` must be writable.
 */
enum PinvStatus pinv_operator_entry(const struct PinvOperator *op, size_t i, size_t j, char **out);

/**
 * The leading `rows x cols` block as JSON.
 *
 * # Safety
 * `op` must be a live handle; `out` must be writable.
 */
enum PinvStatus pinv_operator_truncate_json(const struct PinvOperator *op,
                                            size_t rows,
                                            size_t cols,
                                            char **out);

/**
 * Runs a verification suite (`inversion`, `eigen`, `similarity`,
 * `transforms`, `all`). `passed` receives the overall outcome; `report`,
 * when not null, receives the JSON report.
 *
 * # Safety
 * `suite` must be a NUL-terminated string; `passed` writable; `report` null
 * or writable.
 */
enum PinvStatus pinv_verify(const char *suite,
                            size_t depth,
                            uint64_t seed,
                            bool *passed,
                            char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PASCAL_INVARIANTS_H */
