#ifndef SUPERDG_H
#define SUPERDG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SdgStatus {
  SDG_STATUS_OK = 0,
  SDG_STATUS_NULL_ARGUMENT = 1,
  SDG_STATUS_INVALID_UTF8 = 2,
  SDG_STATUS_PARSE_ERROR = 3,
  SDG_STATUS_INVALID_INPUT = 4,
  SDG_STATUS_VERIFICATION_FAILED = 5,
  SDG_STATUS_TABLE_MISMATCH = 6,
  SDG_STATUS_CAP_INSUFFICIENT = 7,
  SDG_STATUS_PANIC = 8,
} SdgStatus;

/**
 * Opaque free dg algebra.
 */
typedef struct SdgAlgebra SdgAlgebra;

/**
 * Opaque element of a free algebra.
 */
typedef struct SdgElement SdgElement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on this thread.
 */
const char *sdg_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *sdg_version(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a pointer obtained from this library, released once.
 */
void sdg_string_free(char *s);

/**
 * Builds an algebra from its JSON description and validates the differential.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum SdgStatus sdg_algebra_from_json(const char *json, struct SdgAlgebra **out);

/**
 * # Safety
 * `a` must be null or a handle from this library, released once.
 */
void sdg_algebra_free(struct SdgAlgebra *a);

/**
 * Number of generators, or 0 for a null handle.
 *
 * # Safety
 * `a` must be null or a live handle.
 */
size_t sdg_algebra_generator_count(const struct SdgAlgebra *a);

/**
 * JSON description of the algebra.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum SdgStatus sdg_algebra_to_json(const struct SdgAlgebra *a, char **out);

/**
 * Parses an expression over the algebra's generators.
 *
 * # Safety
 * `a` must be a live handle, `expr` NUL-terminated, `out` writable.
 */
enum SdgStatus sdg_element_parse(const struct SdgAlgebra *a,
                                 const char *expr,
                                 struct SdgElement **out);

/**
 * # Safety
 * `e` must be null or a handle from this library, released once.
 */
void sdg_element_free(struct SdgElement *e);

/**
 * Canonical printed form.
 *
 * # Safety
 * `e` must be a live handle; `out` must be writable.
 */
enum SdgStatus sdg_element_to_string(const struct SdgElement *e, char **out);

/**
 * # Safety
 * `a`, `b` must be live handles over the same algebra; `out` writable.
 */
enum SdgStatus sdg_element_add(const struct SdgElement *a,
                               const struct SdgElement *b,
                               struct SdgElement **out);

/**
 * # Safety
 * `a`, `b` must be live handles over the same algebra; `out` writable.
 */
enum SdgStatus sdg_element_sub(const struct SdgElement *a,
                               const struct SdgElement *b,
                               struct SdgElement **out);

/**
 * Supercommutative product.
 *
 * # Safety
 * `a`, `b` must be live handles over the same algebra; `out` writable.
 */
enum SdgStatus sdg_element_mul(const struct SdgElement *a,
                               const struct SdgElement *b,
                               struct SdgElement **out);

/**
 * Writes 1 to `out` if the elements are equal, else 0.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` writable.
 */
enum SdgStatus sdg_element_equal(const struct SdgElement *a,
                                 const struct SdgElement *b,
                                 int32_t *out);

/**
 * Left partial derivative by a named generator.
 *
 * # Safety
 * `e` must be a live handle, `name` NUL-terminated, `out` writable.
 */
enum SdgStatus sdg_element_partial(const struct SdgElement *e,
                                   const char *name,
                                   struct SdgElement **out);

/**
 * Applies the algebra's differential.
 *
 * # Safety
 * `a`, `e` must be live handles with `e` over `a`; `out` writable.
 */
enum SdgStatus sdg_element_differential(const struct SdgAlgebra *a,
                                        const struct SdgElement *e,
                                        struct SdgElement **out);

/**
 * Cohomology per bidegree in `[w_min, w_max]` as a JSON array.
 *
 * # Safety
 * `a` must be a live handle; `out` writable.
 */
enum SdgStatus sdg_cohomology_json(const struct SdgAlgebra *a,
                                   int64_t w_min,
                                   int64_t w_max,
                                   uint32_t degree_cap,
                                   char **out);

/**
 * Cohomology dimensions of a finite cochain complex given as JSON.
 *
 * # Safety
 * `json` must be NUL-terminated; `out` writable.
 */
enum SdgStatus sdg_complex_cohomology_json(const char *json, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUPERDG_H */
