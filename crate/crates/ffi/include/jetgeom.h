#ifndef JETGEOM_H
#define JETGEOM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Outcome of a singularity-equation membership query.
 */
typedef enum JgMembership {
  JG_MEMBERSHIP_NOT_MEMBER = 0,
  /**
   * a rational witness point exists
   */
  JG_MEMBERSHIP_MEMBER = 1,
  /**
   * witnesses exist only at irrational parameters
   */
  JG_MEMBERSHIP_MEMBER_IRRATIONAL = 2,
} JgMembership;

/**
 * Result of every fallible call.
 */
typedef enum JgStatus {
  JG_STATUS_OK = 0,
  JG_STATUS_NULL_ARGUMENT = 1,
  JG_STATUS_INVALID_INPUT = 2,
  JG_STATUS_PARSE = 3,
  JG_STATUS_INVALID_CONTEXT = 4,
  JG_STATUS_NOT_INTEGRAL = 5,
  JG_STATUS_UNSUPPORTED = 6,
  JG_STATUS_UNDECIDED = 7,
  JG_STATUS_FALSIFIED = 8,
  JG_STATUS_INTERNAL = 9,
} JgStatus;

/**
 * Opaque handle to a parsed third-order equation in two variables.
 */
typedef struct JgPde JgPde;

/**
 * Opaque handle to a subspace of a Cartan plane.
 */
typedef struct JgSubspace JgSubspace;

/**
 * Closed-form dimensions for `(n, m, k, s)`.
 */
typedef struct JgDims {
  size_t flag;
  size_t isotropic;
  size_t fiber;
  size_t stabilizer;
  size_t polar;
  size_t sharp_target;
} JgDims;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null after a
 * success. Valid until the next `jg_*` call on the same thread.
 */
const char *jg_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *jg_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void jg_string_free(char *s);

/**
 * Closed-form dimensions; fails unless `1 <= s <= n` and the context is valid.
 *
 * # Safety
 * `out` must be null or point to writable memory for a `JgDims`.
 */
enum JgStatus jg_dims(size_t n, size_t m, size_t k, size_t s, struct JgDims *out);

/**
 * Parses the JSON subspace format used by the command-line tool.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum JgStatus jg_subspace_from_json(const char *text, struct JgSubspace **out);

/**
 * Seeded random integral element of dimension `s`: the lift of a random
 * `s`-dimensional shadow by a random degree-`k` polynomial.
 *
 * # Safety
 * `out` must be writable.
 */
enum JgStatus jg_subspace_random_integral(size_t n,
                                          size_t m,
                                          size_t k,
                                          size_t s,
                                          uint64_t seed,
                                          struct JgSubspace **out);

/**
 * Releases a subspace handle. Null is ignored.
 *
 * # Safety
 * `h` must come from this library and not have been freed already.
 */
void jg_subspace_free(struct JgSubspace *h);

/**
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum JgStatus jg_subspace_dim(const struct JgSubspace *h, size_t *out);

/**
 * Whether the subspace is horizontal and isotropic.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum JgStatus jg_subspace_is_integral(const struct JgSubspace *h, bool *out);

/**
 * Serializes the subspace in the JSON input format.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum JgStatus jg_subspace_to_json(const struct JgSubspace *h, char **out);

/**
 * Polar-plane report (tangent dimension, rank of the sharp map, polar
 * dimension, each against its closed form) as JSON.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum JgStatus jg_polar_report_json(const struct JgSubspace *h, char **out);

/**
 * Parses `F(u_xxx, u_xxy, u_xyy, u_yyy)`.
 *
 * # Safety
 * `source` must be a nul-terminated string; `out` must be writable.
 */
enum JgStatus jg_pde_parse(const char *source, struct JgPde **out);

/**
 * Releases an equation handle. Null is ignored.
 *
 * # Safety
 * `h` must come from this library and not have been freed already.
 */
void jg_pde_free(struct JgPde *h);

/**
 * Whether the line `line` (a 1-dimensional subspace for `n = 2, m = 1,
 * k = 3`) belongs to the singularity equation of `pde`.
 *
 * # Safety
 * Both handles must be live; `out` must be writable.
 */
enum JgStatus jg_pde_membership(const struct JgPde *pde,
                                const struct JgSubspace *line,
                                enum JgMembership *out);

/**
 * The full Monge-Ampere example report as JSON, with the same sample
 * counts as the command-line tool.
 *
 * # Safety
 * `out` must be writable.
 */
enum JgStatus jg_ma_example_json(uint64_t seed, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* JETGEOM_H */
