#ifndef DOWNUP_H
#define DOWNUP_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Shape of a relation group `S(r,s)`.
typedef enum DuGroupKind {
  DU_GROUP_KIND_TRIVIAL = 0,
  // Generated by `(n, m)`.
  DU_GROUP_KIND_SAME_SIGN = 1,
  // Generated by `(n, -m)`.
  DU_GROUP_KIND_OPPOSITE_SIGN = 2,
  // Basis `(n, m), (0, c)`.
  DU_GROUP_KIND_LATTICE = 3,
} DuGroupKind;

// Status codes. Values below 100 are interface failures; 100 and above
// mirror the kernel's domain errors.
typedef enum DuStatus {
  DU_STATUS_OK = 0,
  DU_STATUS_NULL_ARGUMENT = 1,
  DU_STATUS_INVALID_UTF8 = 2,
  DU_STATUS_PANIC = 3,
  DU_STATUS_DIVISION_BY_ZERO = 100,
  DU_STATUS_ZERO_INPUT = 101,
  DU_STATUS_NOT_NOETHERIAN = 102,
  DU_STATUS_NOT_HOMOGENEOUS = 103,
  DU_STATUS_REQUIRES_R_NOT_ONE = 104,
  DU_STATUS_NOT_CONFORMAL = 105,
  DU_STATUS_UNSUPPORTED_REGIME = 106,
  DU_STATUS_IS_CONFORMAL = 107,
  DU_STATUS_HYPOTHESIS_FAILED = 108,
  DU_STATUS_NEEDS_SQUARE_ROOT_OF_R = 109,
  DU_STATUS_UNDECIDABLE_AT_BOUND = 110,
  DU_STATUS_SYNTAX_ERROR = 111,
  DU_STATUS_UNKNOWN_SYMBOL = 112,
  DU_STATUS_INVALID_CONFIG = 113,
  DU_STATUS_DIMENSION_TOO_LARGE = 114,
} DuStatus;

// An algebra together with its configured bounds.
typedef struct DuAlgebra DuAlgebra;

typedef struct DuRelationGroup {
  enum DuGroupKind kind;
  uint32_t n;
  uint32_t m;
  uint32_t c;
} DuRelationGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds an algebra from the same TOML accepted by the `downup` binary.
//
// # Safety
// `toml` must be a NUL-terminated string and `out` a writable pointer.
enum DuStatus du_algebra_from_toml(const char *toml, struct DuAlgebra **out);

// Builds `L(phi, r, s, gamma)` from expression strings, e.g. `"h^2 + 1"`,
// `"zeta(3)"`, `"1/2"`. The conductor is inferred and bounds are defaults.
//
// # Safety
// All strings must be NUL-terminated and `out` a writable pointer.
enum DuStatus du_algebra_new(const char *phi,
                             const char *r,
                             const char *s,
                             const char *gamma,
                             struct DuAlgebra **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `a` must come from this library and not be used afterwards.
void du_algebra_free(struct DuAlgebra *a);

// Normal form of an element expression in the basis `u^i h^j d^k`.
//
// # Safety
// `a` must be a live handle, `expr` NUL-terminated, `out` writable.
enum DuStatus du_normalize(const struct DuAlgebra *a, const char *expr, char **out);

// Normal form of the product `left * right`.
//
// # Safety
// As for [`du_normalize`].
enum DuStatus du_mul(const struct DuAlgebra *a, const char *left, const char *right, char **out);

// The classification report as JSON, identical to the `result` object of
// `downup classify --json`.
//
// # Safety
// `a` must be a live handle and `out` writable.
enum DuStatus du_classify_json(const struct DuAlgebra *a, char **out);

// The relation group `S(r,s)` of the algebra's parameters.
//
// # Safety
// `a` must be a live handle and `out` writable.
enum DuStatus du_relation_group(const struct DuAlgebra *a, struct DuRelationGroup *out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void du_string_free(char *s);

// Message of the last failure on this thread, or null. The pointer stays
// valid until the next failing call on the same thread.
const char *du_last_error_message(void);

// Library version as a static string.
const char *du_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DOWNUP_H */
