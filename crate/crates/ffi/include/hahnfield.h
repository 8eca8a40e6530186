#ifndef HAHNFIELD_H
#define HAHNFIELD_H

/* Generated by cbindgen from hahnfield-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes for every FFI entry point.
 */
typedef enum HfStatus {
  HF_STATUS_OK = 0,
  HF_STATUS_NULL_POINTER = 1,
  HF_STATUS_INVALID_UTF8 = 2,
  HF_STATUS_PARSE_ERROR = 3,
  HF_STATUS_DEPTH_MISMATCH = 4,
  HF_STATUS_DIVISION_BY_ZERO = 5,
  HF_STATUS_INDETERMINATE = 6,
  HF_STATUS_DOMAIN_ERROR = 7,
  HF_STATUS_INTERNAL_ERROR = 8,
} HfStatus;

/**
 * Opaque handle to a truncated generalized power series.
 */
typedef struct HfSeries HfSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message into `buf` (truncated to `len` bytes,
 * always NUL-terminated) and returns the full message length.
 */
uintptr_t hf_last_error_message(char *buf, uintptr_t len);

/**
 * Parses and evaluates an expression into a series handle. `depth` 0 infers
 * the depth; `prec` may be null for the default horizon.
 */
enum HfStatus hf_series_eval(const char *expr,
                             uintptr_t depth,
                             const char *prec,
                             struct HfSeries **out);

enum HfStatus hf_series_clone(const struct HfSeries *handle, struct HfSeries **out);

void hf_series_free(struct HfSeries *handle);

void hf_string_free(char *s);

/**
 * Canonical text form; parseable by `hf_series_eval`.
 */
enum HfStatus hf_series_to_string(const struct HfSeries *handle, char **out);

enum HfStatus hf_series_depth(const struct HfSeries *handle, uintptr_t *out);

/**
 * Sum; the result precision is the finer inputs' minimum.
 */
enum HfStatus hf_series_add(const struct HfSeries *a,
                            const struct HfSeries *b,
                            struct HfSeries **out);

/**
 * Difference.
 */
enum HfStatus hf_series_sub(const struct HfSeries *a,
                            const struct HfSeries *b,
                            struct HfSeries **out);

/**
 * Cauchy product with precision propagation.
 */
enum HfStatus hf_series_mul(const struct HfSeries *a,
                            const struct HfSeries *b,
                            struct HfSeries **out);

/**
 * Multiplicative inverse. `target` (a `t^...` exponent) bounds the result
 * when the input is exact with several terms; it may be null otherwise.
 */
enum HfStatus hf_series_invert(const struct HfSeries *a, const char *target, struct HfSeries **out);

/**
 * Valuation as text: an exponent vector, or "inf" for the exact zero.
 */
enum HfStatus hf_series_val(const struct HfSeries *handle, char **out);

/**
 * Residue at a convex-subgroup level, as a new handle of smaller depth.
 */
enum HfStatus hf_series_residue(const struct HfSeries *handle,
                                uintptr_t level,
                                struct HfSeries **out);

/**
 * Floor into the canonical integer part.
 */
enum HfStatus hf_series_floor(const struct HfSeries *handle, struct HfSeries **out);

/**
 * Ordering comparison: writes -1, 0 or 1.
 */
enum HfStatus hf_series_compare(const struct HfSeries *a, const struct HfSeries *b, int *out);

/**
 * q-th root of a 1-unit, to the `t^...` target precision.
 */
enum HfStatus hf_series_unit_root(const struct HfSeries *handle,
                                  uint32_t q,
                                  const char *target,
                                  struct HfSeries **out);

/**
 * Runs a named scenario and returns the JSON report. Names:
 * "psf-integer-part", "chain-counterexample", "quotient-field", "embdsrf".
 */
enum HfStatus hf_scenario_json(const char *name,
                               uintptr_t depth,
                               uintptr_t n_max,
                               uintptr_t samples,
                               uint64_t seed,
                               char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HAHNFIELD_H */
