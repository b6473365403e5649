#ifndef RSDYN_H
#define RSDYN_H

/* Generated by cbindgen from rsdyn-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum RsdynStatus {
  RsdynStatus_Ok = 0,
  /**
   * Malformed input: bad JSON, unknown example, invalid parameters.
   */
  RsdynStatus_InvalidInput = 1,
  /**
   * A numerical procedure failed to converge.
   */
  RsdynStatus_NumericalFailure = 2,
  /**
   * A required pointer argument was null.
   */
  RsdynStatus_NullPointer = 3,
  /**
   * A string argument was not valid UTF-8.
   */
  RsdynStatus_InvalidUtf8 = 4,
} RsdynStatus;

/**
 * Opaque point-cloud handle.
 */
typedef struct RsdynCloud RsdynCloud;

/**
 * Opaque semigroup handle.
 */
typedef struct RsdynSpec RsdynSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. The pointer stays
 * valid until the next failing call on the same thread; never free it.
 */
const char *rsdyn_last_error_message(void);

/**
 * Parse a semigroup spec from its JSON form.
 */
enum RsdynStatus rsdyn_spec_from_json(const char *json, struct RsdynSpec **out);

/**
 * Look up a built-in example (cantor, koch, example4[:N], schottky[:N]).
 */
enum RsdynStatus rsdyn_spec_example(const char *name, struct RsdynSpec **out);

/**
 * Serialize the spec back to JSON. Free the string with
 * `rsdyn_string_free`.
 */
enum RsdynStatus rsdyn_spec_to_json(const struct RsdynSpec *spec, char **out);

enum RsdynStatus rsdyn_spec_generator_count(const struct RsdynSpec *spec, uintptr_t *out);

void rsdyn_spec_free(struct RsdynSpec *spec);

/**
 * sup of the spherical Lipschitz constants of the generators.
 */
enum RsdynStatus rsdyn_lip_sup(const struct RsdynSpec *spec, double tol, double *out);

/**
 * Repelling fixed points of all words of length ≤ max_len.
 */
enum RsdynStatus rsdyn_repelling_cloud(const struct RsdynSpec *spec,
                                       uintptr_t max_len,
                                       struct RsdynCloud **out);

/**
 * Randomized backward orbit from (seed_re, seed_im), or from ∞ when
 * seed_is_inf is nonzero. Deterministic in rng_seed.
 */
enum RsdynStatus rsdyn_backward_cloud(const struct RsdynSpec *spec,
                                      double seed_re,
                                      double seed_im,
                                      int seed_is_inf,
                                      uintptr_t n_samples,
                                      uintptr_t burn_in,
                                      uint64_t rng_seed,
                                      struct RsdynCloud **out);

enum RsdynStatus rsdyn_cloud_len(const struct RsdynCloud *cloud, uintptr_t *out);

/**
 * Read point `index`: writes coordinates and whether the point is ∞.
 */
enum RsdynStatus rsdyn_cloud_point(const struct RsdynCloud *cloud,
                                   uintptr_t index,
                                   double *out_re,
                                   double *out_im,
                                   int *out_is_inf);

/**
 * SHA-256 digest of the producing spec. Free with `rsdyn_string_free`.
 */
enum RsdynStatus rsdyn_cloud_spec_hash(const struct RsdynCloud *cloud, char **out);

void rsdyn_cloud_free(struct RsdynCloud *cloud);

/**
 * Symmetric Hausdorff distance between two clouds (chordal metric).
 */
enum RsdynStatus rsdyn_hausdorff_dist(const struct RsdynCloud *a,
                                      const struct RsdynCloud *b,
                                      double *out);

/**
 * Hausdorff defect of the cloud against its generator pullbacks.
 */
enum RsdynStatus rsdyn_self_similarity_defect(const struct RsdynSpec *spec,
                                              const struct RsdynCloud *cloud,
                                              double *out);

/**
 * Smallest certified escape radius ≤ r_max; found is 0 when absent.
 */
enum RsdynStatus rsdyn_escape_radius(const struct RsdynSpec *spec,
                                     double r_max,
                                     int *out_found,
                                     double *out_radius);

/**
 * Maximum-modulus separating round annulus at the given scale floor;
 * found is 0 when no candidate separates.
 */
enum RsdynStatus rsdyn_max_separating_modulus(const struct RsdynCloud *cloud,
                                              double scale_floor,
                                              int *out_found,
                                              double *out_modulus,
                                              double *out_center_re,
                                              double *out_center_im,
                                              double *out_r1,
                                              double *out_r2);

/**
 * Free a string returned by this library.
 */
void rsdyn_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RSDYN_H */
