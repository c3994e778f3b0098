#ifndef KIRBY_H
#define KIRBY_H

/* Generated by cbindgen from crates/ffi. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define KIRBY_ABI_VERSION 1

typedef enum KirbyStatus {
  KIRBY_STATUS_OK = 0,
  KIRBY_STATUS_NULL_POINTER = 1,
  KIRBY_STATUS_INVALID_UTF8 = 2,
  KIRBY_STATUS_PARSE_ERROR = 3,
  KIRBY_STATUS_INVALID_INPUT = 4,
  KIRBY_STATUS_BUFFER_TOO_SMALL = 5,
  KIRBY_STATUS_OVERFLOW = 6,
  KIRBY_STATUS_PANIC = 7,
} KirbyStatus;

/**
 * Opaque family certificate.
 */
typedef struct KirbyCertificate KirbyCertificate;

/**
 * Opaque surgery presentation.
 */
typedef struct KirbyPresentation KirbyPresentation;

/**
 * Opaque result of replaying a move script.
 */
typedef struct KirbyReport KirbyReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

uint32_t kirby_abi_version(void);

/**
 * Message for the most recent failure on this thread, or "" after success.
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *kirby_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void kirby_string_free(char *s);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum KirbyStatus kirby_presentation_from_json(const char *json, struct KirbyPresentation **out);

/**
 * Base (`final_stage = false`) or final presentation of the family link.
 *
 * # Safety
 * `out` must be writable.
 */
enum KirbyStatus kirby_family_presentation(int64_t n,
                                           int64_t k,
                                           bool final_stage,
                                           struct KirbyPresentation **out);

/**
 * # Safety
 * `p` must be NULL or a handle from this library, not yet freed.
 */
void kirby_presentation_free(struct KirbyPresentation *p);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum KirbyStatus kirby_presentation_len(const struct KirbyPresentation *p, size_t *out);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable. Free the result with
 * [`kirby_string_free`].
 */
enum KirbyStatus kirby_presentation_to_json(const struct KirbyPresentation *p, char **out);

/**
 * Invariant factors of H₁ (1s dropped, 0 for a free summand). `*len`
 * receives the number of factors; they are written to `factors` only when
 * `capacity` is large enough, otherwise the status is `BufferTooSmall`.
 * `factors` may be NULL when `capacity` is 0.
 *
 * # Safety
 * `p` must be a live handle, `len` writable, and `factors` valid for
 * `capacity` writes.
 */
enum KirbyStatus kirby_first_homology(const struct KirbyPresentation *p,
                                      int64_t *factors,
                                      size_t capacity,
                                      size_t *len);

/**
 * Determinant of the framed linking matrix (integral presentations only).
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum KirbyStatus kirby_framed_determinant(const struct KirbyPresentation *p, int64_t *out);

/**
 * Replays a move script given as JSON. A script that fails verification
 * still yields `Ok` and a report; check [`kirby_report_ok`].
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum KirbyStatus kirby_verify_script_json(const char *json, struct KirbyReport **out);

/**
 * # Safety
 * `r` must be a live handle; `out` must be writable.
 */
enum KirbyStatus kirby_report_ok(const struct KirbyReport *r, bool *out);

/**
 * # Safety
 * `r` must be a live handle; `out` must be writable.
 */
enum KirbyStatus kirby_report_steps_checked(const struct KirbyReport *r, size_t *out);

/**
 * # Safety
 * `r` must be a live handle; `out` must be writable.
 */
enum KirbyStatus kirby_report_retype_count(const struct KirbyReport *r, size_t *out);

/**
 * # Safety
 * `r` must be a live handle; `out` must be writable. Free the result with
 * [`kirby_string_free`].
 */
enum KirbyStatus kirby_report_to_json(const struct KirbyReport *r, char **out);

/**
 * # Safety
 * `r` must be NULL or a handle from this library, not yet freed.
 */
void kirby_report_free(struct KirbyReport *r);

/**
 * # Safety
 * `out` must be writable.
 */
enum KirbyStatus kirby_certify(int64_t n, int64_t k, struct KirbyCertificate **out);

/**
 * Whether all four family properties were certified.
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum KirbyStatus kirby_certificate_all_hold(const struct KirbyCertificate *c, bool *out);

/**
 * # Safety
 * `c` must be a live handle; `out` must be writable. Free the result with
 * [`kirby_string_free`].
 */
enum KirbyStatus kirby_certificate_to_json(const struct KirbyCertificate *c, char **out);

/**
 * # Safety
 * `c` must be NULL or a handle from this library, not yet freed.
 */
void kirby_certificate_free(struct KirbyCertificate *c);

/**
 * Schubert normal form of `S(p, q)`.
 *
 * # Safety
 * All out pointers must be writable.
 */
enum KirbyStatus kirby_classify(int64_t p,
                                int64_t q,
                                int64_t *p_out,
                                int64_t *q_canonical_out,
                                bool *hyperbolic_out);

/**
 * # Safety
 * `out` must be writable.
 */
enum KirbyStatus kirby_distinct_links(int64_t n_a,
                                      int64_t k_a,
                                      int64_t n_b,
                                      int64_t k_b,
                                      bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KIRBY_H */
