#ifndef AFFINE_LEIBNIZ_H
#define AFFINE_LEIBNIZ_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible function.
typedef enum AlStatus {
  AL_STATUS_OK = 0,
  AL_STATUS_NULL_POINTER = 1,
  AL_STATUS_INVALID_ARGUMENT = 2,
  AL_STATUS_CAP_EXCEEDED = 3,
  AL_STATUS_CHECK_FAILED = 4,
  AL_STATUS_OVERFLOW = 5,
  AL_STATUS_PANIC = 6,
} AlStatus;

// Opaque algebra handle.
typedef struct AlAlgebra AlAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or null. Valid until the
// next failing call on the same thread.
const char *al_last_error_message(void);

// Builds `so(p,q)`.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum AlStatus al_algebra_so(size_t p, size_t q, struct AlAlgebra **out);

// Builds the affine algebra `I_n ⋊ so(p,q)`.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum AlStatus al_algebra_affine(size_t p, size_t q, struct AlAlgebra **out);

// Builds the abelian algebra of dimension `n`.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum AlStatus al_algebra_abelian(size_t n, struct AlAlgebra **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `alg` must come from one of the constructors and not be used afterwards.
void al_algebra_free(struct AlAlgebra *alg);

// Dimension of the algebra.
//
// # Safety
// `alg` must be a live handle and `out` writable.
enum AlStatus al_algebra_dim(const struct AlAlgebra *alg, size_t *out);

// Coefficient of `e_c` in `[e_a, e_b]` as a reduced fraction.
//
// # Safety
// `alg` must be a live handle; `num` and `den` writable.
enum AlStatus al_algebra_bracket(const struct AlAlgebra *alg,
                                 size_t a,
                                 size_t b,
                                 size_t c,
                                 int64_t *num,
                                 int64_t *den);

// Label of basis element `i` (for example `d1`, `X12`, `Y13`).
//
// # Safety
// `alg` must be a live handle and `out` writable. Free the result with
// `al_string_free`.
enum AlStatus al_algebra_label(const struct AlAlgebra *alg, size_t i, char **out);

// Runs antisymmetry, Jacobi and grading checks.
//
// # Safety
// `alg` must be a live handle and `passed` writable.
enum AlStatus al_algebra_validate(const struct AlAlgebra *alg, bool *passed);

// Dimension of the invariant subspace of a module given in the descriptor
// grammar (`wedge:I:k`, `I*wedge:k`, `so*wedge:k`, `tensor:h:k`, `so`).
//
// # Safety
// `descriptor` must be a NUL-terminated string and `out` writable.
enum AlStatus al_invariant_dim(size_t p, size_t q, const char *descriptor, size_t *out);

// Loday Betti numbers in degrees `0..=max_degree`, written to `out`
// (which must hold at least `max_degree + 1` entries). `modular` allows
// two-prime ranks above the exact cap.
//
// # Safety
// `alg` must be a live handle and `out` must point to `len` writable slots.
enum AlStatus al_homology_dims(const struct AlAlgebra *alg,
                               size_t max_degree,
                               bool modular,
                               uint64_t seed,
                               size_t *out,
                               size_t len);

// Runs a verification suite (`structure`, `paper` or `all`) and returns
// the JSON report. `passed` receives whether every gating check passed.
//
// # Safety
// `suite` must be a NUL-terminated string; `out` and `passed` writable.
// Free the result with `al_string_free`.
enum AlStatus al_verify_json(size_t p,
                             size_t q,
                             const char *suite,
                             uint64_t seed,
                             bool *passed,
                             char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void al_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AFFINE_LEIBNIZ_H */
