#ifndef EISDEPTH_H
#define EISDEPTH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EisdepthStatus {
  EISDEPTH_STATUS_OK = 0,
  EISDEPTH_STATUS_NULL_POINTER = 1,
  /**
   * Invalid level, prime or argument.
   */
  EISDEPTH_STATUS_INVALID_ARGUMENT = 2,
  EISDEPTH_STATUS_COMPUTATION = 3,
  /**
   * A computed result contradicts a theorem-level invariant.
   */
  EISDEPTH_STATUS_INVARIANT = 4,
  EISDEPTH_STATUS_CACHE = 5,
  EISDEPTH_STATUS_IO = 6,
  EISDEPTH_STATUS_OUT_OF_RANGE = 7,
  EISDEPTH_STATUS_PANIC = 8,
} EisdepthStatus;

/**
 * Opaque engine: newform data and eigenvalue cache.
 */
typedef struct EisdepthEngine EisdepthEngine;

/**
 * Opaque depth report for one level and prime.
 */
typedef struct EisdepthReport EisdepthReport;

/**
 * One congruence: a prime above `p` in the coefficient field of an orbit.
 */
typedef struct EisdepthRecord {
  uint64_t level;
  uint64_t orbit;
  uint64_t degree;
  uint64_t lambda;
  uint32_t e;
  uint32_t f;
  uint32_t r;
  uint64_t residue_field_size;
} EisdepthRecord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *eisdepth_last_error_message(void);

/**
 * Creates an engine. `cache_dir` may be null (no on-disk cache);
 * `threads == 0` uses all cores.
 *
 * # Safety
 * `cache_dir` must be null or a valid nul-terminated string; `out` must be
 * a valid pointer.
 */
enum EisdepthStatus eisdepth_engine_new(const char *cache_dir,
                                        uint64_t seed,
                                        uint32_t threads,
                                        struct EisdepthEngine **out);

/**
 * # Safety
 * `engine` must be null or a handle from [`eisdepth_engine_new`] not yet freed.
 */
void eisdepth_engine_free(struct EisdepthEngine *engine);

/**
 * Computes the depth report for level `level` and prime `p`. `bound == 0`
 * uses the Sturm bound; `with_index == 0` skips the Eisenstein ideal.
 *
 * # Safety
 * `engine` must be a live engine handle and `out` a valid pointer.
 */
enum EisdepthStatus eisdepth_compute(struct EisdepthEngine *engine,
                                     uint64_t level,
                                     uint64_t p,
                                     uint64_t bound,
                                     int32_t with_index,
                                     struct EisdepthReport **out);

/**
 * # Safety
 * `report` must be null or a handle from [`eisdepth_compute`] not yet freed.
 */
void eisdepth_report_free(struct EisdepthReport *report);

/**
 * Total depth `D`, or 0 for a null handle.
 *
 * # Safety
 * `report` must be null or a live report handle.
 */
uint64_t eisdepth_report_depth(const struct EisdepthReport *report);

/**
 * `val_p(phi(N))`.
 *
 * # Safety
 * `report` must be null or a live report handle.
 */
uint32_t eisdepth_report_val_phi(const struct EisdepthReport *report);

/**
 * `val_p(#T/J)`, or -1 when the index was not computed.
 *
 * # Safety
 * `report` must be null or a live report handle.
 */
int64_t eisdepth_report_val_index(const struct EisdepthReport *report);

/**
 * Minimal number of generators of the local Eisenstein ideal, or -1.
 *
 * # Safety
 * `report` must be null or a live report handle.
 */
int64_t eisdepth_report_minimal_generators(const struct EisdepthReport *report);

/**
 * Number of failed invariant checks in the report.
 *
 * # Safety
 * `report` must be null or a live report handle.
 */
uint64_t eisdepth_report_failed_checks(const struct EisdepthReport *report);

/**
 * # Safety
 * `report` must be null or a live report handle.
 */
uint64_t eisdepth_report_record_count(const struct EisdepthReport *report);

/**
 * Copies record `i` into `out`.
 *
 * # Safety
 * `report` must be a live report handle and `out` a valid pointer.
 */
enum EisdepthStatus eisdepth_report_record(const struct EisdepthReport *report,
                                           uint64_t i,
                                           struct EisdepthRecord *out);

/**
 * The full report as JSON; release with [`eisdepth_string_free`].
 *
 * # Safety
 * `report` must be a live report handle and `out` a valid pointer.
 */
enum EisdepthStatus eisdepth_report_json(const struct EisdepthReport *report, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void eisdepth_string_free(char *s);

/**
 * Sturm bound of a squarefree level.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum EisdepthStatus eisdepth_sturm_bound(uint64_t level, uint64_t *out);

/**
 * Runs `count` seeded random toy instances plus the worked examples and
 * stores the number that passed in `passed` and the total in `total`.
 *
 * # Safety
 * `passed` and `total` must be valid pointers.
 */
enum EisdepthStatus eisdepth_toy_verify(uint64_t seed,
                                        uint32_t count,
                                        uint32_t *passed,
                                        uint32_t *total);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EISDEPTH_H */
