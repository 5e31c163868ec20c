#ifndef RDCAS_H
#define RDCAS_H

/* Generated from the rdcas-capi crate; edits here are overwritten. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum RdcasStatus {
  RDCAS_STATUS_OK = 0,
  RDCAS_STATUS_ORDER_MISMATCH = 1,
  RDCAS_STATUS_NOT_INVERTIBLE = 2,
  RDCAS_STATUS_NOT_UNIPOTENT = 3,
  RDCAS_STATUS_NOT_PROPER = 4,
  RDCAS_STATUS_NOT_DIVISIBLE = 5,
  RDCAS_STATUS_NOT_A_DIVISOR = 6,
  RDCAS_STATUS_INSUFFICIENT_ORDER = 7,
  RDCAS_STATUS_PARSE_ERROR = 8,
  RDCAS_STATUS_INVALID_ARGUMENT = 9,
  RDCAS_STATUS_IDENTITY_FAILED = 10,
} RdcasStatus;

/**
 * Truncated Dirichlet series with exact symbolic coefficients.
 */
typedef struct RdcasDps RdcasDps;

/**
 * Truncated ordinary power series with exact symbolic coefficients.
 */
typedef struct RdcasFps RdcasFps;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Last failure message for the calling thread, or null if none was
 * recorded. The caller frees the returned string with rdcas_string_free.
 */
char *rdcas_last_error_message(void);

/**
 * Releases a string produced by this library. Null is ignored.
 *
 * # Safety
 * The pointer must have been returned by this library and not freed yet.
 */
void rdcas_string_free(char *text);

/**
 * Parses a series document {"kind":"fps","order":N,"coeffs":{...}}.
 */
enum RdcasStatus rdcas_fps_parse_json(const char *json, struct RdcasFps **out);

/**
 * Parses a series document {"kind":"dps","order":N,"coeffs":{...}}.
 */
enum RdcasStatus rdcas_dps_parse_json(const char *json, struct RdcasDps **out);

/**
 * Renders the series as a pretty-printed JSON document.
 */
enum RdcasStatus rdcas_fps_to_json(const struct RdcasFps *handle, char **out);

/**
 * Renders the series as a pretty-printed JSON document.
 */
enum RdcasStatus rdcas_dps_to_json(const struct RdcasDps *handle, char **out);

/**
 * Releases a power-series handle. Null is ignored.
 *
 * # Safety
 * The handle must have been returned by this library and not freed yet.
 */
void rdcas_fps_free(struct RdcasFps *handle);

/**
 * Releases a Dirichlet-series handle. Null is ignored.
 *
 * # Safety
 * The handle must have been returned by this library and not freed yet.
 */
void rdcas_dps_free(struct RdcasDps *handle);

/**
 * Truncation order of the series (last tracked index).
 */
uint64_t rdcas_fps_order(const struct RdcasFps *handle);

/**
 * Truncation order of the series (last tracked index).
 */
uint64_t rdcas_dps_order(const struct RdcasDps *handle);

/**
 * Renders one coefficient in the expression grammar accepted back by pow
 * and transform, for example "1/2*phi^2+l2".
 */
enum RdcasStatus rdcas_fps_coeff(const struct RdcasFps *handle, uint64_t n, char **out);

/**
 * Renders one coefficient; indices are 1-based as for any Dirichlet series.
 */
enum RdcasStatus rdcas_dps_coeff(const struct RdcasDps *handle, uint64_t n, char **out);

enum RdcasStatus rdcas_fps_mul(const struct RdcasFps *a,
                               const struct RdcasFps *b,
                               struct RdcasFps **out);

enum RdcasStatus rdcas_dps_mul(const struct RdcasDps *a,
                               const struct RdcasDps *b,
                               struct RdcasDps **out);

/**
 * Multiplicative inverse; fails unless the leading coefficient is a
 * nonzero rational.
 */
enum RdcasStatus rdcas_fps_inv(const struct RdcasFps *handle, struct RdcasFps **out);

/**
 * Multiplicative inverse; fails unless the coefficient at 1 is a nonzero
 * rational.
 */
enum RdcasStatus rdcas_dps_inv(const struct RdcasDps *handle, struct RdcasDps **out);

/**
 * Logarithm of a unipotent series.
 */
enum RdcasStatus rdcas_fps_log(const struct RdcasFps *handle, struct RdcasFps **out);

/**
 * Logarithm of a unipotent series.
 */
enum RdcasStatus rdcas_dps_log(const struct RdcasDps *handle, struct RdcasDps **out);

/**
 * Raises a unipotent series to a symbolic exponent given in the expression
 * grammar, for example "phi" or "-2*beta+1".
 */
enum RdcasStatus rdcas_fps_pow(const struct RdcasFps *handle,
                               const char *exponent,
                               struct RdcasFps **out);

/**
 * Raises a unipotent series to a symbolic exponent given in the expression
 * grammar.
 */
enum RdcasStatus rdcas_dps_pow(const struct RdcasDps *handle,
                               const char *exponent,
                               struct RdcasDps **out);

/**
 * Formal derivative. The order drops by one.
 */
enum RdcasStatus rdcas_fps_derive(const struct RdcasFps *handle, struct RdcasFps **out);

/**
 * Log-scaled derivation n -> -ln(n) a_n. The order is unchanged.
 */
enum RdcasStatus rdcas_dps_derive(const struct RdcasDps *handle, struct RdcasDps **out);

/**
 * Beta-shift transform of a unipotent power series: coefficient n becomes
 * phi/(phi+beta*n) [x^n] a^(phi+beta*n).
 */
enum RdcasStatus rdcas_fps_transform(const struct RdcasFps *handle,
                                     const char *beta,
                                     struct RdcasFps **out);

/**
 * Beta-shift transform of a unipotent Dirichlet series: coefficient n
 * becomes phi/(phi+beta*ln n) [n^-s] a^(phi+beta*ln n).
 */
enum RdcasStatus rdcas_dps_transform(const struct RdcasDps *handle,
                                     const char *beta,
                                     struct RdcasDps **out);

/**
 * Runs one verification suite and writes its reports to out_path, one JSON
 * object per line. Suite names and default bounds match the rdcas binary;
 * pass n_max 0 to use the suite default. Returns IdentityFailed when any
 * report in the stream failed.
 */
enum RdcasStatus rdcas_verify(const char *suite,
                              uint64_t n_max,
                              uint64_t seed,
                              const char *out_path);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RDCAS_H */
