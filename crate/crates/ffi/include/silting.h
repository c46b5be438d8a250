#ifndef SILTING_H
#define SILTING_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SiltStatus {
  SILT_STATUS_OK = 0,
  SILT_STATUS_NULL_POINTER = 1,
  SILT_STATUS_INVALID_UTF8 = 2,
  SILT_STATUS_MALFORMED_JSON = 3,
  SILT_STATUS_NOT_A_COMPLEX = 4,
  SILT_STATUS_BLOCK_SHAPE = 5,
  SILT_STATUS_INVALID_ALGEBRA = 6,
  SILT_STATUS_ALGEBRA_MISMATCH = 7,
  SILT_STATUS_NOT_TILTING = 8,
  SILT_STATUS_FAILED = 9,
  SILT_STATUS_PANIC = 10,
} SiltStatus;

/**
 * `Λ^{p,q}`.
 */
typedef struct SiltAlgebra SiltAlgebra;

/**
 * A bounded complex of projective `Λ^{p,q}`-modules.
 */
typedef struct SiltComplex SiltComplex;

typedef struct SiltFlags {
  bool presilting;
  bool silting;
  bool tilting;
} SiltFlags;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * Valid until the next call on the same thread.
 */
const char *silt_last_error(void);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum SiltStatus silt_algebra_new(size_t p, size_t q, struct SiltAlgebra **out);

/**
 * # Safety
 * `a` must come from [`silt_algebra_new`] and not be used afterwards.
 */
void silt_algebra_free(struct SiltAlgebra *a);

/**
 * Dimension of `Λ^{p,q}`, or 0 for a null handle.
 *
 * # Safety
 * `a` must be null or a live handle.
 */
size_t silt_algebra_dim(const struct SiltAlgebra *a);

/**
 * Writes the Cartan matrix row by row into `out[0..4]`.
 *
 * # Safety
 * `a` must be a live handle and `out` valid for four writes.
 */
enum SiltStatus silt_algebra_cartan(const struct SiltAlgebra *a, size_t *out);

/**
 * Parses the JSON interchange format; `d ∘ d = 0` is checked.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` valid for writes.
 */
enum SiltStatus silt_complex_from_json(const char *json, struct SiltComplex **out);

/**
 * The stalk complex `P_vertex` (vertex 1 or 2) in the given degree.
 *
 * # Safety
 * `a` must be a live handle and `out` valid for writes.
 */
enum SiltStatus silt_complex_projective(const struct SiltAlgebra *a,
                                        uint32_t vertex,
                                        int32_t degree,
                                        struct SiltComplex **out);

/**
 * `Λ = P_1 ⊕ P_2` in degree 0.
 *
 * # Safety
 * `a` must be a live handle and `out` valid for writes.
 */
enum SiltStatus silt_complex_regular(const struct SiltAlgebra *a, struct SiltComplex **out);

/**
 * # Safety
 * `c` must come from this library and not be used afterwards.
 */
void silt_complex_free(struct SiltComplex *c);

/**
 * The complex as JSON; free the result with [`silt_string_free`]. Null on
 * a null handle.
 *
 * # Safety
 * `c` must be null or a live handle.
 */
char *silt_complex_to_json(const struct SiltComplex *c);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void silt_string_free(char *s);

/**
 * Writes `[lo, hi]`; an empty complex gives `lo > hi`.
 *
 * # Safety
 * `c` must be a live handle and `lo`, `hi` valid for writes.
 */
enum SiltStatus silt_complex_degrees(const struct SiltComplex *c, int32_t *lo, int32_t *hi);

/**
 * # Safety
 * `c` must be a live handle and `out` valid for writes.
 */
enum SiltStatus silt_complex_minimize(const struct SiltComplex *c, struct SiltComplex **out);

/**
 * # Safety
 * `c` must be a live handle and `out` valid for writes.
 */
enum SiltStatus silt_complex_flags(const struct SiltComplex *c, struct SiltFlags *out);

/**
 * `dim Hom_K(x, y[shift])`.
 *
 * # Safety
 * `x`, `y` must be live handles and `out` valid for writes.
 */
enum SiltStatus silt_hom_dim(const struct SiltComplex *x,
                             const struct SiltComplex *y,
                             int32_t shift,
                             size_t *out);

/**
 * The Nakayama functor `ν`, or `ν^{-1}` when `inverse` is set.
 *
 * # Safety
 * `c` must be a live handle and `out` valid for writes.
 */
enum SiltStatus silt_nakayama(const struct SiltComplex *c, bool inverse, struct SiltComplex **out);

/**
 * A two-term complex isomorphic to `ν^m(c)`, with `m` written to `m_out`.
 *
 * # Safety
 * `c` must be a live handle; `out` and `m_out` valid for writes.
 */
enum SiltStatus silt_reduce(const struct SiltComplex *c,
                            size_t max_steps,
                            struct SiltComplex **out,
                            int64_t *m_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SILTING_H */
