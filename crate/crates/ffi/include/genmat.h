#ifndef GENMAT_H
#define GENMAT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by all functions.
 */
typedef enum GenmatStatus {
  GENMAT_STATUS_OK = 0,
  GENMAT_STATUS_NULL_ARGUMENT = 1,
  GENMAT_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed JSON, polynomial syntax or an ill-posed instance.
   */
  GENMAT_STATUS_INVALID_INPUT = 3,
  /**
   * The power criterion found nothing up to the configured bound.
   */
  GENMAT_STATUS_INCONCLUSIVE = 4,
  /**
   * Every sampled candidate was rejected.
   */
  GENMAT_STATUS_EXHAUSTED = 5,
  GENMAT_STATUS_PANIC = 6,
} GenmatStatus;

/**
 * Opaque graded algebra `k[x]/I`.
 */
typedef struct GenmatAlgebra GenmatAlgebra;

/**
 * Optional overrides; zero means "not set" for every field except `seed`,
 * which is read only when `has_seed` is true.
 */
typedef struct GenmatOptions {
  uint64_t prime;
  uint64_t seed;
  bool has_seed;
  size_t n_max;
  size_t trials;
  size_t max_tries;
} GenmatOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *genmat_version(void);

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *genmat_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed before.
 */
void genmat_string_free(char *s);

/**
 * Builds an algebra from the `ring` (and optional `field`) sections of an
 * instance document. `prime` overrides the document when nonzero.
 *
 * # Safety
 * `instance_json` must be a NUL-terminated string and `out` writable.
 */
enum GenmatStatus genmat_algebra_new(const char *instance_json,
                                     uint64_t prime,
                                     struct GenmatAlgebra **out);

/**
 * Frees an algebra. Null is ignored.
 *
 * # Safety
 * `algebra` must come from [`genmat_algebra_new`] and not have been freed.
 */
void genmat_algebra_free(struct GenmatAlgebra *algebra);

/**
 * Krull dimension of the algebra.
 *
 * # Safety
 * `algebra` must be a live handle and `out` writable.
 */
enum GenmatStatus genmat_algebra_dimension(const struct GenmatAlgebra *algebra, size_t *out);

/**
 * Whether `elements` form a homogeneous system of parameters.
 *
 * # Safety
 * `elements` must point to `count` NUL-terminated strings; `out` writable.
 */
enum GenmatStatus genmat_algebra_is_hsop(const struct GenmatAlgebra *algebra,
                                         const char *const *elements,
                                         size_t count,
                                         bool *out);

/**
 * Whether `elements` (linear forms) give a graded Noether normalization.
 *
 * # Safety
 * Same contract as [`genmat_algebra_is_hsop`].
 */
enum GenmatStatus genmat_algebra_is_noether_normalization(const struct GenmatAlgebra *algebra,
                                                          const char *const *elements,
                                                          size_t count,
                                                          bool *out);

/**
 * Runs a check task (`nn`, `hsop`, `reduction`, `minimal-reduction`,
 * `complete-reduction-ring`, `complete-reduction-ideals`) on an instance
 * document. On success `*report` receives the JSON report and `*verdict`
 * (if non-null) its exit code: 0 true, 1 false, 2 inconclusive.
 *
 * # Safety
 * String arguments must be NUL-terminated; `report` writable; `options`
 * may be null.
 */
enum GenmatStatus genmat_check(const char *task,
                               const char *instance_json,
                               const struct GenmatOptions *options,
                               char **report,
                               int32_t *verdict);

/**
 * Runs the `exchange` section of an instance document. An exhausted
 * exchange still produces a report, with `*verdict` set to 4.
 *
 * # Safety
 * As for [`genmat_check`].
 */
enum GenmatStatus genmat_exchange(const char *instance_json,
                                  const struct GenmatOptions *options,
                                  char **report,
                                  int32_t *verdict);

/**
 * Runs the built-in quadric demonstration.
 *
 * # Safety
 * `report` writable; `options` may be null.
 */
enum GenmatStatus genmat_demo(const struct GenmatOptions *options, char **report, int32_t *verdict);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GENMAT_H */
