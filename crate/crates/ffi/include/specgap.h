#ifndef SPECGAP_H
#define SPECGAP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SpecgapMethod {
  SPECGAP_METHOD_FINITE_DIFFERENCE = 0,
  SPECGAP_METHOD_NUMEROV_SHOOTING = 1,
} SpecgapMethod;

typedef enum SpecgapStatus {
  SPECGAP_STATUS_OK = 0,
  SPECGAP_STATUS_NULL_POINTER = 1,
  SPECGAP_STATUS_PARSE = 2,
  SPECGAP_STATUS_INVALID_ARGUMENT = 3,
  SPECGAP_STATUS_OUT_OF_RANGE = 4,
  SPECGAP_STATUS_PANIC = 5,
} SpecgapStatus;

typedef enum SpecgapVerdict {
  SPECGAP_VERDICT_POSITIVE_DEFINITE = 0,
  SPECGAP_VERDICT_NEGATIVE_DEFINITE = 1,
  SPECGAP_VERDICT_INDEFINITE = 2,
  SPECGAP_VERDICT_IDENTICALLY_ZERO = 3,
} SpecgapVerdict;

/**
 * Certificate family `F_N(x, E, λ)` for a fixed potential and test-function
 * family.
 */
typedef struct SpecgapFamily SpecgapFamily;

/**
 * Result of an energy scan.
 */
typedef struct SpecgapGaps SpecgapGaps;

typedef struct SpecgapSpectrum SpecgapSpectrum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failed call on this thread, or NULL. The
 * pointer stays valid until the next call into this library on the same
 * thread.
 */
const char *specgap_last_error(void);

/**
 * Library version as a static string.
 */
const char *specgap_version(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void specgap_string_free(char *s);

/**
 * Pretty-printed `F_N` in the `V − E` form.
 *
 * # Safety
 * `out_text` must be a valid pointer.
 */
enum SpecgapStatus specgap_derive(size_t order, char **out_text);

/**
 * Build `F_N` for `potential` (polynomial in `x`) and `a0_family`
 * (polynomial in `x` and `l1..l9`).
 *
 * # Safety
 * String arguments must be NUL-terminated; `out_family` must be valid.
 */
enum SpecgapStatus specgap_family_new(const char *potential,
                                      size_t order,
                                      const char *a0_family,
                                      struct SpecgapFamily **out_family);

/**
 * # Safety
 * `family` must be NULL or a live handle.
 */
void specgap_family_free(struct SpecgapFamily *family);

/**
 * Number of `λ` parameters, or 0 for a NULL handle.
 *
 * # Safety
 * `family` must be NULL or a live handle.
 */
size_t specgap_family_nparams(const struct SpecgapFamily *family);

/**
 * The certificate polynomial as text.
 *
 * # Safety
 * `family` must be a live handle and `out_text` valid.
 */
enum SpecgapStatus specgap_family_text(const struct SpecgapFamily *family, char **out_text);

/**
 * Exact sign of `F(·, E, λ)` on the real line, with `E` and `λ` taken as the
 * exact binary values of the doubles.
 *
 * # Safety
 * `lambda` must point to `nlambda` doubles; `out_verdict` must be valid.
 */
enum SpecgapStatus specgap_family_sign(const struct SpecgapFamily *family,
                                       double energy,
                                       const double *lambda,
                                       size_t nlambda,
                                       enum SpecgapVerdict *out_verdict);

/**
 * Scan `[e_lo, e_hi]` for certified eigenvalue-free intervals. `lambda_box`
 * holds `2·nparams` doubles `lo₁, hi₁, lo₂, hi₂, …`.
 *
 * # Safety
 * Pointers must be valid for the stated lengths.
 */
enum SpecgapStatus specgap_scan(const struct SpecgapFamily *family,
                                double e_lo,
                                double e_hi,
                                double e_step,
                                const double *lambda_box,
                                size_t box_len,
                                double tol,
                                uint64_t seed,
                                struct SpecgapGaps **out_gaps);

/**
 * # Safety
 * `gaps` must be NULL or a live handle.
 */
void specgap_gaps_free(struct SpecgapGaps *gaps);

/**
 * # Safety
 * `gaps` must be NULL or a live handle.
 */
size_t specgap_gaps_len(const struct SpecgapGaps *gaps);

/**
 * Bounds of interval `index`; `e_low` is `-INFINITY` for intervals
 * unbounded below.
 *
 * # Safety
 * `gaps` must be a live handle; output pointers must be valid.
 */
enum SpecgapStatus specgap_gaps_get(const struct SpecgapGaps *gaps,
                                    size_t index,
                                    double *e_low,
                                    double *e_high);

/**
 * Lowest `count` eigenvalues of `−½d²/dx² + V`. A non-positive `half_width`
 * selects the default domain.
 *
 * # Safety
 * `potential` must be NUL-terminated; `out_spectrum` valid.
 */
enum SpecgapStatus specgap_eigensolve(const char *potential,
                                      enum SpecgapMethod method,
                                      double half_width,
                                      size_t grid,
                                      size_t count,
                                      struct SpecgapSpectrum **out_spectrum);

/**
 * Spectrum of the family's potential.
 *
 * # Safety
 * `family` must be a live handle; `out_spectrum` valid.
 */
enum SpecgapStatus specgap_family_eigensolve(const struct SpecgapFamily *family,
                                             enum SpecgapMethod method,
                                             double half_width,
                                             size_t grid,
                                             size_t count,
                                             struct SpecgapSpectrum **out_spectrum);

/**
 * # Safety
 * `spectrum` must be NULL or a live handle.
 */
void specgap_spectrum_free(struct SpecgapSpectrum *spectrum);

/**
 * # Safety
 * `spectrum` must be NULL or a live handle.
 */
size_t specgap_spectrum_len(const struct SpecgapSpectrum *spectrum);

/**
 * Eigenvalue `index` and its convergence estimate.
 *
 * # Safety
 * `spectrum` must be a live handle; output pointers valid.
 */
enum SpecgapStatus specgap_spectrum_get(const struct SpecgapSpectrum *spectrum,
                                        size_t index,
                                        double *value,
                                        double *conv_est);

/**
 * Full `gaps` pipeline on a JSON configuration (same format as the CLI
 * `--config` file); writes the JSON report. `disjoint` receives 1 when every
 * gap avoids the oracle spectrum.
 *
 * # Safety
 * `config_json` must be NUL-terminated; output pointers valid.
 */
enum SpecgapStatus specgap_gaps_report(const char *config_json, char **out_json, int32_t *disjoint);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPECGAP_H */
