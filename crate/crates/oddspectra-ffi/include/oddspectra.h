#ifndef ODDSPECTRA_H
#define ODDSPECTRA_H

/* Generated from the Rust sources by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Call outcome. Zero is success; everything else leaves out-params
 * untouched except where noted.
 */
typedef enum OddStatus {
  ODD_STATUS_OK = 0,
  ODD_STATUS_NULL_POINTER = 1,
  ODD_STATUS_INVALID_ARGUMENT = 2,
  ODD_STATUS_NOT_PRIME = 3,
  ODD_STATUS_EVEN_CHARACTERISTIC = 4,
  ODD_STATUS_TOO_LARGE = 5,
  ODD_STATUS_RESIDUE_MISMATCH = 6,
  ODD_STATUS_DIVISION_BY_ZERO = 7,
  /**
   * The spectrum needs more entries than the caller's buffer holds;
   * the required length has been written to len_out.
   */
  ODD_STATUS_BUFFER_TOO_SMALL = 8,
  ODD_STATUS_INTERNAL_ERROR = 9,
} OddStatus;

typedef struct OddField OddField;

typedef struct OddFn OddFn;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *oddspectra_version(void);

/**
 * Static human-readable name for a status code.
 */
const char *oddspectra_status_str(enum OddStatus status);

/**
 * Builds F_{p^n}. On success writes a handle the caller must release
 * with oddspectra_field_free.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum OddStatus oddspectra_field_new(uint64_t p, uint32_t n, struct OddField **out);

/**
 * Releases a field handle. Null is a no-op.
 *
 * # Safety
 * `f` must be null or a pointer from oddspectra_field_new, not yet freed.
 */
void oddspectra_field_free(struct OddField *f);

/**
 * Field order q, or 0 on a null handle.
 *
 * # Safety
 * `f` must be null or a live field handle.
 */
uint64_t oddspectra_field_q(const struct OddField *f);

/**
 * Characteristic p, or 0 on a null handle.
 *
 * # Safety
 * `f` must be null or a live field handle.
 */
uint64_t oddspectra_field_p(const struct OddField *f);

/**
 * Extension degree n, or 0 on a null handle.
 *
 * # Safety
 * `f` must be null or a live field handle.
 */
uint32_t oddspectra_field_n(const struct OddField *f);

/**
 * The exponent (q+1)/4; fails with ResidueMismatch unless q = 3 (mod 4).
 *
 * # Safety
 * `f` and `out` must be valid pointers; `f` must be a live field handle.
 */
enum OddStatus oddspectra_field_r(const struct OddField *f, uint64_t *out);

/**
 * Quadratic character of the element with canonical index x: -1, 0, or 1.
 *
 * # Safety
 * `f` and `out` must be valid pointers; `f` must be a live field handle.
 */
enum OddStatus oddspectra_field_chi(const struct OddField *f, uint64_t x, int32_t *out);

/**
 * Builds x^r * (1 + u*chi(x)) with u given as a canonical index. Pass
 * r = 0 for the default exponent (q+1)/4.
 *
 * # Safety
 * `f` and `out` must be valid pointers; `f` must be a live field handle.
 */
enum OddStatus oddspectra_binomial_new(const struct OddField *f,
                                       uint64_t r,
                                       uint64_t u,
                                       struct OddFn **out);

/**
 * Builds the power map x^d, d >= 1.
 *
 * # Safety
 * `f` and `out` must be valid pointers; `f` must be a live field handle.
 */
enum OddStatus oddspectra_power_new(const struct OddField *f, uint64_t d, struct OddFn **out);

/**
 * Releases a function handle. Null is a no-op.
 *
 * # Safety
 * `g` must be null or a pointer from a *_new call, not yet freed.
 */
void oddspectra_fn_free(struct OddFn *g);

/**
 * Evaluates the function at the element with canonical index x.
 *
 * # Safety
 * `g` and `out` must be valid pointers; `g` must be a live function handle.
 */
enum OddStatus oddspectra_fn_eval(const struct OddFn *g, uint64_t x, uint64_t *out);

/**
 * Whether the function permutes the field.
 *
 * # Safety
 * `g` and `out` must be valid pointers; `g` must be a live function handle.
 */
enum OddStatus oddspectra_fn_is_permutation(const struct OddFn *g, bool *out);

/**
 * Differential uniformity: the largest difference count over a != 0.
 *
 * # Safety
 * `g` and `out` must be valid pointers; `g` must be a live function handle.
 */
enum OddStatus oddspectra_diff_uniformity(const struct OddFn *g, uint64_t *out);

/**
 * Row-1 difference spectrum over all b, as sorted (value, multiplicity)
 * pairs split across two arrays of capacity `cap`. The entry count goes
 * to len_out; BufferTooSmall means run again with at least that much.
 *
 * # Safety
 * `g` and `len_out` must be valid; `values_out` and `mults_out` must
 * hold `cap` writable entries each.
 */
enum OddStatus oddspectra_diff_spectrum(const struct OddFn *g,
                                        uint64_t *values_out,
                                        uint64_t *mults_out,
                                        size_t cap,
                                        size_t *len_out);

/**
 * Boomerang uniformity over a != 0, b != 0. The full table walk refuses
 * fields larger than `table_cap` with TooLarge.
 *
 * # Safety
 * `g` and `out` must be valid pointers; `g` must be a live function handle.
 */
enum OddStatus oddspectra_boom_uniformity(const struct OddFn *g, uint64_t table_cap, uint64_t *out);

/**
 * Row-1 pair spectrum over b != 0, same buffer contract as the
 * difference spectrum.
 *
 * # Safety
 * `g` and `len_out` must be valid; `values_out` and `mults_out` must
 * hold `cap` writable entries each.
 */
enum OddStatus oddspectra_boom_spectrum(const struct OddFn *g,
                                        uint64_t *values_out,
                                        uint64_t *mults_out,
                                        size_t cap,
                                        size_t *len_out);

/**
 * The restricted cubic character sum steering the pair spectrum;
 * defined for q = 7 (mod 8) only.
 *
 * # Safety
 * `f` and `out` must be valid pointers; `f` must be a live field handle.
 */
enum OddStatus oddspectra_gamma(const struct OddField *f, int64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ODDSPECTRA_H */
