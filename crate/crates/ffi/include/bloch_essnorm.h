#ifndef BLOCH_ESSNORM_H
#define BLOCH_ESSNORM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BlochStatus {
  BLOCH_STATUS_OK = 0,
  BLOCH_STATUS_NULL_POINTER = 1,
  BLOCH_STATUS_INVALID_UTF8 = 2,
  BLOCH_STATUS_PARSE = 3,
  BLOCH_STATUS_SELF_MAP_VIOLATION = 4,
  BLOCH_STATUS_DOMAIN = 5,
  BLOCH_STATUS_NUMERIC = 6,
  BLOCH_STATUS_RESOURCE = 7,
  BLOCH_STATUS_PANIC = 8,
} BlochStatus;

/**
 * A harmonic function `h + conj(g)`.
 */
typedef struct BlochFunction BlochFunction;

/**
 * A validated self-map of the disk.
 */
typedef struct BlochSymbol BlochSymbol;

/**
 * Sampling parameters; obtain defaults from [`bloch_sampling_default`].
 */
typedef struct BlochSampling {
  uint32_t radial_levels;
  uint32_t angular_base;
  uint32_t refinement_rounds;
  uint64_t seed;
} BlochSampling;

typedef struct BlochEssNorm {
  double e1;
  double e2;
  double e3;
  double bounded_sup;
} BlochEssNorm;

typedef struct BlochExtremals {
  double peak_radius;
  double peak_value;
  double band_min;
} BlochExtremals;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *bloch_last_error(void);

struct BlochSampling bloch_sampling_default(void);

/**
 * Parses and validates a symbol such as `automorphism a=0.5+0i`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BlochStatus bloch_symbol_parse(const char *spec, struct BlochSymbol **out);

/**
 * # Safety
 * `symbol` must come from [`bloch_symbol_parse`] and not be freed twice.
 */
void bloch_symbol_free(struct BlochSymbol *symbol);

/**
 * Parses a harmonic function such as `znbar n=5`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BlochStatus bloch_function_parse(const char *spec, struct BlochFunction **out);

/**
 * # Safety
 * `function` must come from [`bloch_function_parse`] and not be freed twice.
 */
void bloch_function_free(struct BlochFunction *function);

/**
 * Harmonic alpha-Bloch norm `|f(0)| + sup (1-|z|^2)^alpha (|f_z| + |f_zbar|)`.
 * A NULL `sampling` selects the defaults.
 *
 * # Safety
 * `function` must be a live handle, `sampling` NULL or valid, `out` valid.
 */
enum BlochStatus bloch_norm(const struct BlochFunction *function,
                            double alpha,
                            const struct BlochSampling *sampling,
                            double *out);

/**
 * The pointwise ratio whose limits give the essential norm, at `re + i im`.
 *
 * # Safety
 * `symbol` must be a live handle and `out` a valid pointer.
 */
enum BlochStatus bloch_ratio_at(const struct BlochSymbol *symbol,
                                double alpha,
                                double re,
                                double im,
                                double *out);

/**
 * The three essential-norm estimates plus the boundedness supremum.
 *
 * # Safety
 * `symbol` must be a live handle, `sampling` NULL or valid, `out` valid.
 */
enum BlochStatus bloch_essnorm(const struct BlochSymbol *symbol,
                               double alpha,
                               const struct BlochSampling *sampling,
                               uint32_t ladder_n,
                               struct BlochEssNorm *out);

/**
 * Closed-form norm of `z^n + conj(z)^n`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum BlochStatus bloch_znbar_norm(uint64_t n, double alpha, double *out);

/**
 * `(2 alpha / e)^alpha`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum BlochStatus bloch_band_limit(double alpha, double *out);

/**
 * Peak radius, peak value and band minimum of `x^(n-1) (1-x^2)^alpha`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum BlochStatus bloch_extremals(uint64_t n, double alpha, struct BlochExtremals *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BLOCH_ESSNORM_H */
