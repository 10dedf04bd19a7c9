/* SPDX-License-Identifier: Apache-2.0 */

#ifndef QUADRICODE_H
#define QUADRICODE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a call.
 */
typedef enum QcStatus {
  QC_STATUS_OK = 0,
  /**
   * A required pointer was null.
   */
  QC_STATUS_NULL_POINTER = 1,
  /**
   * Malformed input: bad field order, string, modulus or element.
   */
  QC_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Parameters outside the range the construction supports.
   */
  QC_STATUS_OUT_OF_RANGE = 3,
  /**
   * Exhaustive search would exceed the budget.
   */
  QC_STATUS_BUDGET_EXCEEDED = 4,
  /**
   * No suite of that name.
   */
  QC_STATUS_UNKNOWN_SUITE = 5,
  /**
   * A caller buffer is too small.
   */
  QC_STATUS_BUFFER_TOO_SMALL = 6,
  /**
   * A panic was caught at the boundary.
   */
  QC_STATUS_INTERNAL = 7,
} QcStatus;

/**
 * Code families that can be built.
 */
typedef enum QcVariety {
  QC_VARIETY_HYPERBOLIC = 0,
  QC_VARIETY_ELLIPTIC = 1,
  QC_VARIETY_SEGRE = 2,
  QC_VARIETY_TWISTED = 3,
  QC_VARIETY_BCH = 4,
  QC_VARIETY_BCH0 = 5,
  QC_VARIETY_BCH_EXT = 6,
  QC_VARIETY_BCH0_EXT = 7,
} QcVariety;

/**
 * A linear code with labelled coordinates.
 */
typedef struct QcCode QcCode;

/**
 * A finite field.
 */
typedef struct QcField QcField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Owned by the library.
 */
const char *qc_last_error(void);

/**
 * Library version as a static string.
 */
const char *qc_version(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` is null or came from this library and was not freed before.
 */
void qc_string_free(char *s);

/**
 * Creates the field with `q` elements and its default modulus.
 *
 * # Safety
 * `out` is a valid pointer.
 */
enum QcStatus qc_field_new(uint64_t q, struct QcField **out);

/**
 * Creates GF(p^e) with the monic modulus `coeffs[0..len]`, constant term first.
 *
 * # Safety
 * `coeffs` points to `len` values and `out` is valid.
 */
enum QcStatus qc_field_with_modulus(uint64_t p,
                                    uint32_t e,
                                    const uint32_t *coeffs,
                                    size_t len,
                                    struct QcField **out);

/**
 * # Safety
 * `f` is null or a handle from this library not freed before.
 */
void qc_field_free(struct QcField *f);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `f` is null or a live handle.
 */
uint32_t qc_field_order(const struct QcField *f);

/**
 * # Safety
 * `f` is null or a live handle.
 */
uint32_t qc_field_characteristic(const struct QcField *f);

/**
 * Sum of two elements given by their encodings.
 *
 * # Safety
 * `f` is a live handle and `out` is valid.
 */
enum QcStatus qc_field_add(const struct QcField *f, uint32_t a, uint32_t b, uint32_t *out);

/**
 * Product of two elements given by their encodings.
 *
 * # Safety
 * `f` is a live handle and `out` is valid.
 */
enum QcStatus qc_field_mul(const struct QcField *f, uint32_t a, uint32_t b, uint32_t *out);

/**
 * Quotient `a / b`; fails on `b = 0`.
 *
 * # Safety
 * `f` is a live handle and `out` is valid.
 */
enum QcStatus qc_field_div(const struct QcField *f, uint32_t a, uint32_t b, uint32_t *out);

/**
 * Builds a code. `d` is the number of copies of P^1 (2 for the quadrics).
 * `alternate` selects the second modulus and the last primitive element.
 *
 * # Safety
 * `out` is a valid pointer.
 */
enum QcStatus qc_code_build(enum QcVariety variety,
                            uint64_t q,
                            uint32_t d,
                            uint32_t s,
                            bool alternate,
                            struct QcCode **out);

/**
 * # Safety
 * `c` is null or a handle from this library not freed before.
 */
void qc_code_free(struct QcCode *c);

/**
 * Code length, or 0 for a null handle.
 *
 * # Safety
 * `c` is null or a live handle.
 */
size_t qc_code_length(const struct QcCode *c);

/**
 * Code dimension, or 0 for a null handle.
 *
 * # Safety
 * `c` is null or a live handle.
 */
size_t qc_code_dimension(const struct QcCode *c);

/**
 * Copies the reduced generator matrix row by row into `buf` as element
 * encodings. `buf` needs `dimension * length` entries.
 *
 * # Safety
 * `c` is a live handle and `buf` points to `len` writable values.
 */
enum QcStatus qc_code_generator(const struct QcCode *c, uint32_t *buf, size_t len);

/**
 * Exact minimum distance, visiting at most `budget` scalar classes
 * (0 selects the default budget).
 *
 * # Safety
 * `c` is a live handle and `out` is valid.
 */
enum QcStatus qc_code_min_distance(const struct QcCode *c, uint64_t budget, size_t *out);

/**
 * The code as JSON. Free the result with `qc_string_free`.
 *
 * # Safety
 * `c` is a live handle and `out` is valid.
 */
enum QcStatus qc_code_to_json(const struct QcCode *c, char **out);

/**
 * Runs a verification suite on its default instances. Writes the number of
 * passing and total instances, and optionally the reports as JSON lines
 * (`report` may be null; free it with `qc_string_free`).
 *
 * # Safety
 * `name` is a NUL-terminated string; `passed` and `total` are valid;
 * `report` is null or valid.
 */
enum QcStatus qc_verify_suite(const char *name,
                              bool alternate,
                              uint32_t *passed,
                              uint32_t *total,
                              char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUADRICODE_H */
