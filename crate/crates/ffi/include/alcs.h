#ifndef ALCS_H
#define ALCS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define ALCS_ALGORITHM_NAIVE 0

#define ALCS_ALGORITHM_PRUNED 1

typedef enum AlcsStatus {
  ALCS_STATUS_OK = 0,
  ALCS_STATUS_NULL_POINTER = 1,
  ALCS_STATUS_INVALID_ARGUMENT = 2,
  ALCS_STATUS_INVALID_EPSILON = 3,
  ALCS_STATUS_IO = 4,
  ALCS_STATUS_BAD_MAGIC = 5,
  ALCS_STATUS_UNSUPPORTED_VERSION = 6,
  ALCS_STATUS_CHECKSUM_MISMATCH = 7,
  ALCS_STATUS_TRUNCATED = 8,
  ALCS_STATUS_MALFORMED = 9,
  ALCS_STATUS_PERSISTENT_COLLISIONS = 10,
  ALCS_STATUS_PANIC = 11,
} AlcsStatus;

// Opaque index handle.
typedef struct AlcsIndex AlcsIndex;

// Query answer. Spans are 1-based and closed; `length == 0` means no
// common substring, and then `t_pos == 0`.
typedef struct AlcsQueryResult {
  uint64_t length;
  uint64_t p_start;
  uint64_t p_end;
  uint64_t t_pos;
} AlcsQueryResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds an index over `text[0..len]`.
//
// `seed` may be null for an entropy-drawn seed. `max_pattern_len == 0`
// means no cap.
//
// # Safety
// `text` must point to `len` readable bytes, `seed` must be null or valid,
// and `out` must be writable.
enum AlcsStatus alcs_build(const uint8_t *text,
                           size_t len,
                           double epsilon,
                           const uint64_t *seed,
                           size_t max_pattern_len,
                           struct AlcsIndex **out);

// Releases an index. Null is ignored.
//
// # Safety
// `index` must be null or a handle from this library not yet freed.
void alcs_index_free(struct AlcsIndex *index);

// Text length, or 0 for a null handle.
//
// # Safety
// `index` must be null or a live handle.
uint64_t alcs_index_n(const struct AlcsIndex *index);

// Number of LZ77 phrases, or 0 for a null handle.
//
// # Safety
// `index` must be null or a live handle.
uint64_t alcs_index_z(const struct AlcsIndex *index);

// `algorithm` is `ALCS_ALGORITHM_NAIVE` or `ALCS_ALGORITHM_PRUNED`.
//
// # Safety
// `index` must be a live handle, `pattern` must point to `len` readable
// bytes, and `out` must be writable.
enum AlcsStatus alcs_query(const struct AlcsIndex *index,
                           const uint8_t *pattern,
                           size_t len,
                           uint32_t algorithm,
                           struct AlcsQueryResult *out);

// Writes the index file to `path`.
//
// # Safety
// `index` must be a live handle and `path` a NUL-terminated string.
enum AlcsStatus alcs_save_file(const struct AlcsIndex *index, const char *path);

// # Safety
// `path` must be a NUL-terminated string and `out` writable.
enum AlcsStatus alcs_load_file(const char *path, struct AlcsIndex **out);

// Serializes the index into a fresh buffer, released with
// [`alcs_bytes_free`].
//
// # Safety
// `index` must be a live handle; `out_data` and `out_len` writable.
enum AlcsStatus alcs_serialize(const struct AlcsIndex *index, uint8_t **out_data, size_t *out_len);

// # Safety
// `data` and `len` must come from one [`alcs_serialize`] call, or `data`
// must be null.
void alcs_bytes_free(uint8_t *data, size_t len);

// # Safety
// `data` must point to `len` readable bytes and `out` must be writable.
enum AlcsStatus alcs_load_bytes(const uint8_t *data, size_t len, struct AlcsIndex **out);

// Message for the last failed call on this thread, or null. Valid until
// the next failing call on the same thread.
const char *alcs_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ALCS_H */
