#ifndef SEMILOCAL_H
#define SEMILOCAL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  SL_STATUS_OK = 0,
  SL_STATUS_NULL_POINTER = 1,
  SL_STATUS_INVALID_UTF8 = 2,
  // Bad arguments or an algebra that does not meet a precondition.
  SL_STATUS_INPUT = 3,
  // Malformed `.voa` text.
  SL_STATUS_SYNTAX = 4,
  // An axiom or structural identity failed.
  SL_STATUS_VIOLATION = 5,
  // A verdict relied on sampling and did not settle.
  SL_STATUS_INCONCLUSIVE = 6,
  // The request is outside what the library handles.
  SL_STATUS_UNSUPPORTED = 7,
  SL_STATUS_PANIC = 8,
} SlStatus;

// Opaque handle to a truncated vertex operator algebra.
typedef struct SlVoa SlVoa;

typedef struct {
  size_t exact;
  size_t skipped;
  size_t failed;
} SlAxiomTally;

typedef struct {
  size_t block_count;
  bool semilocal;
  // 1 local, 0 not local, -1 undecided.
  int32_t local;
  bool four_way_agreement;
  size_t caveat_count;
} SlClassification;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer is
// valid until the next library call on the same thread.
const char *sl_last_error(void);

// Library version as a static NUL-terminated string.
const char *sl_version(void);

// Parses `.voa` text into a new handle.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
SlStatus sl_voa_parse(const char *text, SlVoa **out);

// Builds a stock algebra by name, as the `build` subcommand does. `charge`
// may be null, meaning `1/2`.
//
// # Safety
// `name` and a non-null `charge` must be NUL-terminated strings; `out` must
// be writable.
SlStatus sl_voa_build(const char *name, int32_t level, const char *charge, SlVoa **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `v` must come from this library and not have been freed.
void sl_voa_free(SlVoa *v);

// Canonical `.voa` text; release with [`sl_string_free`].
//
// # Safety
// `v` must be a live handle; `out` must be writable.
SlStatus sl_voa_serialize(const SlVoa *v, char **out);

// The weight window `[n_min, n_max]`.
//
// # Safety
// `v` must be a live handle; `n_min` and `n_max` must be writable.
SlStatus sl_voa_window(const SlVoa *v, int32_t *n_min, int32_t *n_max);

// `dim V_weight`, zero outside the window.
//
// # Safety
// `v` must be a live handle; `out` must be writable.
SlStatus sl_voa_dim(const SlVoa *v, int32_t weight, size_t *out);

// Runs the axiom verifier. Returns `SL_STATUS_VIOLATION` when an instance
// fails; the tally is filled in either way.
//
// # Safety
// `v` must be a live handle; `out` must be writable.
SlStatus sl_voa_check(const SlVoa *v, SlAxiomTally *out);

// Classifies the blocks of `v`. Returns `SL_STATUS_INCONCLUSIVE` when a
// sampled verdict did not settle.
//
// # Safety
// `v` must be a live handle; `out` must be writable.
SlStatus sl_voa_classify(const SlVoa *v, uint64_t seed, size_t samples, SlClassification *out);

// The machine-readable report of a CLI subcommand (`check`, `center`,
// `blocks`, `radicals` or `classify`) on `v`; release with [`sl_string_free`].
//
// # Safety
// `v` must be a live handle; `command` a NUL-terminated string; `out` writable.
SlStatus sl_voa_report(const SlVoa *v,
                       const char *command,
                       uint64_t seed,
                       size_t samples,
                       char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void sl_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEMILOCAL_H */
