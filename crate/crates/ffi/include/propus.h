#ifndef PROPUS_H
#define PROPUS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum {
  PROPUS_STATUS_OK = 0,
  PROPUS_STATUS_NULL_POINTER = 1,
  PROPUS_STATUS_INVALID_ARGUMENT = 2,
  PROPUS_STATUS_PARSE = 3,
  PROPUS_STATUS_PRECONDITION = 4,
  PROPUS_STATUS_INTEGRITY = 5,
  PROPUS_STATUS_REFUSED = 6,
  /**
   * A search ended without a result, or an index was out of range.
   */
  PROPUS_STATUS_NOT_FOUND = 7,
  /**
   * A caller-supplied buffer is too small; the required size is reported.
   */
  PROPUS_STATUS_BUFFER_TOO_SMALL = 8,
  PROPUS_STATUS_PANIC = 9,
} PropusStatus;

/**
 * A difference family `(A, B, C, D)`.
 */
typedef struct PropusFamily PropusFamily;

/**
 * A square integer matrix.
 */
typedef struct PropusMatrix PropusMatrix;

/**
 * A parameter set `(v;x,y,y,z;lambda)`.
 */
typedef struct {
  size_t v;
  size_t x;
  size_t y;
  size_t z;
  size_t lambda;
} PropusParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into this library on the same thread.
 */
const char *propus_last_error(void);

/**
 * Frees a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void propus_string_free(char *s);

/**
 * Parses family-file text. With `validate` nonzero the blocks must form a
 * difference family; otherwise damaged families are accepted so they can
 * be passed to [`propus_family_verify`].
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
PropusStatus propus_family_parse(const char *text, int32_t validate, PropusFamily **out);

/**
 * # Safety
 * `family` must come from this library and not have been freed.
 */
void propus_family_free(PropusFamily *family);

/**
 * Writes the family in family-file format to a new string, released with
 * [`propus_string_free`].
 *
 * # Safety
 * `family` must be a live handle; `out` must be writable.
 */
PropusStatus propus_family_to_text(const PropusFamily *family, char **out);

/**
 * # Safety
 * `family` must be a live handle; `out` must be writable.
 */
PropusStatus propus_family_params(const PropusFamily *family, PropusParams *out);

/**
 * Copies block `index` (0 to 3, for `A` to `D`) into `buf`. `len` receives
 * the block size; when `cap` is too small nothing is copied and
 * [`PropusStatus::BufferTooSmall`] is returned.
 *
 * # Safety
 * `family` must be a live handle, `len` writable, and `buf` valid for `cap`
 * elements (it may be null when `cap` is 0).
 */
PropusStatus propus_family_block(const PropusFamily *family,
                                 size_t index,
                                 size_t *buf,
                                 size_t cap,
                                 size_t *len);

/**
 * Runs every check on the family; `passed` receives 1 when all pass. The
 * per-check report is available through `report` when it is not null,
 * released with [`propus_string_free`].
 *
 * # Safety
 * `family` must be a live handle and `passed` writable; `report` may be
 * null.
 */
PropusStatus propus_family_verify(const PropusFamily *family, int32_t *passed, char **report);

/**
 * Number of bundled families.
 *
 * # Safety
 * `out` must be writable.
 */
PropusStatus propus_catalog_len(size_t *out);

/**
 * Bundled family `index`, as a new handle.
 *
 * # Safety
 * `out` must be writable.
 */
PropusStatus propus_catalog_get(size_t index, PropusFamily **out);

/**
 * Assembles and checks the symmetric Hadamard matrix of a propus family.
 *
 * # Safety
 * `family` must be a live handle; `out` must be writable.
 */
PropusStatus propus_build_symmetric_hadamard(const PropusFamily *family, PropusMatrix **out);

/**
 * # Safety
 * `matrix` must come from this library and not have been freed.
 */
void propus_matrix_free(PropusMatrix *matrix);

/**
 * Order `n` of the matrix, or 0 for a null handle.
 *
 * # Safety
 * `matrix` must be a live handle or null.
 */
size_t propus_matrix_order(const PropusMatrix *matrix);

/**
 * Copies the entries row by row into `buf`, which must hold `n·n` values.
 *
 * # Safety
 * `matrix` must be a live handle and `buf` valid for `cap` elements.
 */
PropusStatus propus_matrix_entries(const PropusMatrix *matrix, int32_t *buf, size_t cap);

/**
 * `hadamard` and `symmetric` receive 1 or 0.
 *
 * # Safety
 * `matrix` must be a live handle; both outputs writable.
 */
PropusStatus propus_matrix_check(const PropusMatrix *matrix, int32_t *hadamard, int32_t *symmetric);

/**
 * Parameter sets for odd `v ≥ 3`. `count` receives the number of sets;
 * when `cap` is too small nothing is copied and
 * [`PropusStatus::BufferTooSmall`] is returned.
 *
 * # Safety
 * `count` must be writable and `buf` valid for `cap` elements (null allowed
 * when `cap` is 0).
 */
PropusStatus propus_enumerate_params(size_t v, PropusParams *buf, size_t cap, size_t *count);

/**
 * Single-worker randomized search for one family with `A` symmetric
 * (`slot_d` nonzero: `D` symmetric). Returns [`PropusStatus::NotFound`]
 * when `max_candidates` leaves are generated without a result.
 *
 * # Safety
 * `params` must be a NUL-terminated string such as `"(9;3,3,3,3;3)"`;
 * `out` must be writable.
 */
PropusStatus propus_search(const char *params,
                           uint64_t seed,
                           uint64_t max_candidates,
                           int32_t slot_d,
                           PropusFamily **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PROPUS_H */
