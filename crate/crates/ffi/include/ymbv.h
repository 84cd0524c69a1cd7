#ifndef YMBV_H
#define YMBV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum YmStatus {
  YM_STATUS_OK = 0,
  YM_STATUS_NULL_ARGUMENT = 1,
  YM_STATUS_INVALID_INPUT = 2,
  YM_STATUS_ZERO_MOMENTUM = 3,
  YM_STATUS_NOT_NULL = 4,
  YM_STATUS_DEGENERATE_KINEMATICS = 5,
  YM_STATUS_CERTIFICATE = 6,
  YM_STATUS_CHECKSUM_MISMATCH = 7,
  YM_STATUS_SOLVE_FAILED = 8,
  YM_STATUS_INTERNAL = 9,
} YmStatus;

// Solved θ tables through some arity, with the `h` they were built from.
typedef struct YmBv YmBv;

// A solved homotopy `h`.
typedef struct YmHomotopy YmHomotopy;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Version of the library as a static NUL-terminated string.
const char *ymbv_version(void);

// Message for the last non-`Ok` status on this thread, or an empty string.
// Valid until the next call into the library on the same thread.
const char *ymbv_last_error(void);

void ymbv_string_free(char *s);

// SHA-256 of the embedded structure tables, as 64 hex digits.
enum YmStatus ymbv_fixture_sha256(char **out_hex);

// Solves for `h`. A nonzero `alternate` selects the second candidate
// order, which yields a different homotopy.
enum YmStatus ymbv_homotopy_solve(int alternate, struct YmHomotopy **out_h);

// Reads an `h/1` document and checks `h² = 0` and `dh + hd = □`.
enum YmStatus ymbv_homotopy_from_json(const char *json, struct YmHomotopy **out_h);

enum YmStatus ymbv_homotopy_to_json(const struct YmHomotopy *h, char **out_json);

enum YmStatus ymbv_homotopy_sha256(const struct YmHomotopy *h, char **out_hex);

void ymbv_homotopy_free(struct YmHomotopy *h);

// Solves θ₃, …, θ_max_arity for the given `h`; `max_arity` is 2, 3 or 4.
enum YmStatus ymbv_bv_build(const struct YmHomotopy *h, size_t max_arity, struct YmBv **out_bv);

// Evaluates every axiom component. `out_free` receives the total number of
// free parameters left by the θ solves, zero when they are unique.
enum YmStatus ymbv_bv_verify(const struct YmBv *bv,
                             size_t *out_checked,
                             size_t *out_failing,
                             size_t *out_free);

// The `theta/1` certificate for these tables.
enum YmStatus ymbv_bv_certificate(const struct YmBv *bv, char **out_json);

void ymbv_bv_free(struct YmBv *bv);

// Replays a `theta/1` certificate against `h`. `out_pass` is 1 when the
// recomputed verdicts match the stored ones and all pass.
enum YmStatus ymbv_certificate_recheck(const char *json, const struct YmHomotopy *h, int *out_pass);

// Homology dimensions in unshifted degrees 0..3 at the momentum with
// components `num[μ] / den[μ]`. All three arrays have 4 elements.
enum YmStatus ymbv_homology_dims(const int64_t *num, const int64_t *den, size_t *out_dims);

// Checks that the ternary tree sum vanishes on homology for every
// combination of basis classes at `configs` random null configurations.
// `out_nonzero` receives the number of nonvanishing combinations.
enum YmStatus ymbv_bcj_check(const struct YmHomotopy *h,
                             size_t n,
                             size_t configs,
                             uint64_t seed,
                             size_t *out_nonzero);

// `dim H⁰` and `dim H¹` of the complex `C_ℓ` for `case` 1 or 2 and `n`
// blocks (1 or 2).
enum YmStatus ymbv_vanishing(uint8_t case_, size_t n, int32_t ell, size_t *out_h0, size_t *out_h1);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* YMBV_H */
