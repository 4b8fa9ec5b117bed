#ifndef YPR_H
#define YPR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  YPR_STATUS_OK = 0,
  YPR_STATUS_NULL_POINTER = 1,
  YPR_STATUS_PARSE = 2,
  YPR_STATUS_INVALID_PARAMETERS = 3,
  YPR_STATUS_INVALID_ARGUMENT = 4,
  YPR_STATUS_INELIGIBLE = 5,
  YPR_STATUS_SOLVER = 6,
  YPR_STATUS_BUFFER_TOO_SMALL = 7,
  YPR_STATUS_PANIC = 8,
} YprStatus;

/**
 * CFTP variant selector for [`ypr_cftp_sample`].
 */
typedef enum {
  YPR_ALGORITHM_V1 = 0,
  YPR_ALGORITHM_V2_DOUBLE = 1,
  YPR_ALGORITHM_V2_LINEAR = 2,
  YPR_ALGORITHM_SPECIAL = 3,
} YprAlgorithm;

/**
 * Opaque model handle.
 */
typedef struct YprModel YprModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread; empty after a success.
 * The pointer stays valid until the next call into this library.
 */
const char *ypr_last_error_message(void);

/**
 * Library version, static storage.
 */
const char *ypr_version(void);

/**
 * Parse a JSON model document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
YprStatus ypr_model_from_json(const char *json, YprModel **out);

/**
 * The one-parameter CpG model with rate `rho`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
YprStatus ypr_model_simplest(double rho, YprModel **out);

/**
 * Release a model; null is ignored.
 *
 * # Safety
 * `model` must come from a constructor of this library and not be used afterwards.
 */
void ypr_model_free(YprModel *model);

/**
 * Validation flags; any output pointer may be null.
 *
 * # Safety
 * `model` must be a live handle.
 */
YprStatus ypr_model_validate(const YprModel *model,
                             int *valid,
                             int *cftp_eligible,
                             int *special_eligible);

/**
 * Stationary `F(CG), F(CA), F(TG), F(TA)`.
 *
 * # Safety
 * `model` must be a live handle and `out` point to 4 doubles.
 */
YprStatus ypr_ypr_frequencies(const YprModel *model, double *out);

/**
 * Stationary `F(A), F(T), F(C), F(G)`.
 *
 * # Safety
 * `model` must be a live handle and `out` point to 4 doubles.
 */
YprStatus ypr_nucleotide_frequencies(const YprModel *model, double *out);

/**
 * Stationary frequency of a word over `ACGT`, by the exact circle solver.
 *
 * # Safety
 * `model` must be a live handle, `word` NUL-terminated, `out` valid.
 */
YprStatus ypr_poly_frequency(const YprModel *model, const char *word, double *out);

/**
 * One perfect sample of sites `a+1 ..= b-1`, written to `buf` as a
 * NUL-terminated string of `b - a - 1` letters. `depth` (may be null)
 * receives the number of backward rings used.
 *
 * # Safety
 * `model` must be a live handle and `buf` point to `buf_len` bytes.
 */
YprStatus ypr_cftp_sample(const YprModel *model,
                          int64_t a,
                          int64_t b,
                          YprAlgorithm algorithm,
                          uint64_t seed,
                          char *buf,
                          uintptr_t buf_len,
                          uintptr_t *depth);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* YPR_H */
