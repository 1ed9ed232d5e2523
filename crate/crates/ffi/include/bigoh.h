#ifndef BIGOH_H
#define BIGOH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BigohStatus {
  BIGOH_STATUS_OK = 0,
  BIGOH_STATUS_NULL_POINTER = 1,
  BIGOH_STATUS_INVALID_UTF8 = 2,
  BIGOH_STATUS_PARSE = 3,
  BIGOH_STATUS_DOMAIN = 4,
  BIGOH_STATUS_OUT_OF_RANGE = 5,
  BIGOH_STATUS_PANIC = 6,
} BigohStatus;

/**
 * Opaque irreducible family.
 */
typedef struct BigohFamily BigohFamily;

/**
 * Opaque canonical sum of monomial terms.
 */
typedef struct BigohSum BigohSum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next `bigoh_*` call on the same thread.
 */
const char *bigoh_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void bigoh_string_free(char *s);

/**
 * Parses an expression such as `x^2 + 2*x*y + y^2`.
 *
 * # Safety
 * `expr` must be a NUL-terminated string; `out` must be writable.
 */
enum BigohStatus bigoh_sum_parse(const char *expr, struct BigohSum **out);

/**
 * # Safety
 * `sum` must be null or a handle from this library not yet freed.
 */
void bigoh_sum_free(struct BigohSum *sum);

/**
 * Number of terms, or 0 for a null handle.
 *
 * # Safety
 * `sum` must be null or a live handle.
 */
size_t bigoh_sum_len(const struct BigohSum *sum);

/**
 * # Safety
 * `sum` must be a live handle; `out` must be writable.
 */
enum BigohStatus bigoh_sum_to_string(const struct BigohSum *sum, char **out);

/**
 * # Safety
 * `sum` must be a live handle; `out` must be writable.
 */
enum BigohStatus bigoh_sum_is_irreducible(const struct BigohSum *sum, bool *out);

/**
 * Independence of the term at 0-based `index` in canonical order.
 *
 * # Safety
 * `sum` must be a live handle; `out` must be writable.
 */
enum BigohStatus bigoh_sum_term_independent(const struct BigohSum *sum, size_t index, bool *out);

/**
 * JSON `{"sum", "irreducible", "verdicts": [...]}` with one certificate per term.
 *
 * # Safety
 * `sum` must be a live handle; `out` must be writable.
 */
enum BigohStatus bigoh_sum_check_json(const struct BigohSum *sum, char **out);

/**
 * Irreducible core of `sum` as a new handle.
 *
 * # Safety
 * `sum` must be a live handle; `out` must be writable.
 */
enum BigohStatus bigoh_sum_reduce(const struct BigohSum *sum, struct BigohSum **out);

/**
 * Family `a_i = a1 (2 - alpha^(i-1))`, `b_i = b1 beta^(i-1)`; rationals are `"p/q"` strings.
 *
 * # Safety
 * String arguments must be NUL-terminated; `out` must be writable.
 */
enum BigohStatus bigoh_family_theorem1(size_t k,
                                       const char *alpha,
                                       const char *beta,
                                       const char *a1,
                                       const char *b1,
                                       struct BigohFamily **out);

/**
 * Integer-exponent family with `alpha = p_alpha/q_alpha`, `beta = p_beta/q_beta`.
 *
 * # Safety
 * `out` must be writable.
 */
enum BigohStatus bigoh_family_theorem2(size_t k,
                                       int64_t p_alpha,
                                       int64_t q_alpha,
                                       int64_t p_beta,
                                       int64_t q_beta,
                                       struct BigohFamily **out);

/**
 * Family whose witness exponents all stay below `cap`.
 *
 * # Safety
 * String arguments must be NUL-terminated; `out` must be writable.
 */
enum BigohStatus bigoh_family_theorem3(size_t k,
                                       const char *cap,
                                       const char *a1,
                                       const char *b1,
                                       struct BigohFamily **out);

/**
 * # Safety
 * `family` must be null or a live handle.
 */
void bigoh_family_free(struct BigohFamily *family);

/**
 * # Safety
 * `family` must be null or a live handle.
 */
size_t bigoh_family_len(const struct BigohFamily *family);

/**
 * Family description in the same JSON format `bigoh gen` writes.
 *
 * # Safety
 * `family` must be a live handle; `out` must be writable.
 */
enum BigohStatus bigoh_family_to_json(const struct BigohFamily *family, char **out);

/**
 * Unit-coefficient sum of the family's monomials.
 *
 * # Safety
 * `family` must be a live handle; `out` must be writable.
 */
enum BigohStatus bigoh_family_to_sum(const struct BigohFamily *family, struct BigohSum **out);

/**
 * Envelope table CSV. `z` is a comma-separated list or null for the witness plan.
 *
 * # Safety
 * `family` must be a live handle; `z` null or NUL-terminated; `out` writable.
 */
enum BigohStatus bigoh_family_table_csv(const struct BigohFamily *family,
                                        const char *z,
                                        char **out);

/**
 * Fits a bound to CSV text with header `x,y,t` and returns the JSON report.
 *
 * # Safety
 * `csv` and `max_degree` must be NUL-terminated; `lattice` must point to
 * `lattice_len` values (or be null with `lattice_len == 0` for integers);
 * `out` must be writable.
 */
enum BigohStatus bigoh_fit_csv(const char *csv,
                               size_t max_terms,
                               const char *max_degree,
                               const uint32_t *lattice,
                               size_t lattice_len,
                               bool robust,
                               char **out);

/**
 * Compares the dominant terms of two expressions in `n`: -1, 0 or 1.
 *
 * # Safety
 * `lhs`, `rhs` must be NUL-terminated; `out` must be writable.
 */
enum BigohStatus bigoh_uni_compare(const char *lhs, const char *rhs, int32_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BIGOH_H */
