#ifndef FSIG_H
#define FSIG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FsigStatus {
  FSIG_STATUS_OK = 0,
  FSIG_STATUS_USAGE = 1,
  FSIG_STATUS_ARITHMETIC = 2,
  FSIG_STATUS_RESOURCE = 3,
  FSIG_STATUS_DEGENERATE_DIVISOR = 4,
  FSIG_STATUS_ORACLE_SCOPE = 5,
  FSIG_STATUS_PARSE = 6,
  FSIG_STATUS_NOT_ARTINIAN = 7,
  FSIG_STATUS_EMPTY_SCHEME = 8,
  FSIG_STATUS_IO = 9,
  FSIG_STATUS_NULL_POINTER = 10,
  FSIG_STATUS_PANIC = 11,
} FsigStatus;

/**
 * Opaque parsed fixture with its presentation and a private basis cache.
 */
typedef struct FsigFixture FsigFixture;

/**
 * One estimate `s_e = length / q^d = num / den`.
 */
typedef struct FsigSample {
  uint32_t e;
  uint64_t q;
  uint64_t length;
  int64_t num;
  int64_t den;
} FsigSample;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses fixture text. On success `*out` owns a new handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum FsigStatus fsig_fixture_parse(const char *text, struct FsigFixture **out);

/**
 * Loads one of the fixtures shipped with the library by name.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum FsigStatus fsig_fixture_bundled(const char *name, struct FsigFixture **out);

/**
 * # Safety
 * `fixture` must come from this library and not be freed twice. Null is ignored.
 */
void fsig_fixture_free(struct FsigFixture *fixture);

/**
 * Krull dimension of the fixture's ring.
 *
 * # Safety
 * `fixture` must be a live handle and `out` a valid pointer.
 */
enum FsigStatus fsig_dimension(const struct FsigFixture *fixture, size_t *out);

/**
 * Computes `s_e`, along the fixture's divisor when `with_divisor` is true.
 *
 * # Safety
 * `fixture` must be a live handle and `out` a valid pointer.
 */
enum FsigStatus fsig_signature_estimate(const struct FsigFixture *fixture,
                                        uint32_t e,
                                        bool with_divisor,
                                        struct FsigSample *out);

/**
 * Fedder-type F-purity test at the distinguished point.
 *
 * # Safety
 * `fixture` must be a live handle and `out` a valid pointer.
 */
enum FsigStatus fsig_f_pure(const struct FsigFixture *fixture, bool *out);

/**
 * JSON report of `s_1..s_emax`, in the same format as `fsig compute`.
 * Free the string with [`fsig_string_free`].
 *
 * # Safety
 * `fixture` must be a live handle and `out` a valid pointer.
 */
enum FsigStatus fsig_report_json(const struct FsigFixture *fixture,
                                 uint32_t emax,
                                 bool with_divisor,
                                 char **out);

/**
 * Message for the last failed call on this thread, or null. The pointer stays
 * valid until the next library call on the same thread.
 */
const char *fsig_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not be freed twice. Null is ignored.
 */
void fsig_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FSIG_H */
