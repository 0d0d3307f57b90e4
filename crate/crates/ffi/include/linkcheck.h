#ifndef LINKCHECK_H
#define LINKCHECK_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result code of every fallible call.
typedef enum LcStatus {
  LC_STATUS_OK = 0,
  LC_STATUS_NULL_ARGUMENT = 1,
  LC_STATUS_INVALID_UTF8 = 2,
  LC_STATUS_PARSE = 3,
  LC_STATUS_RING_MISMATCH = 4,
  LC_STATUS_RESOURCE_LIMIT = 5,
  LC_STATUS_PRECONDITION = 6,
  LC_STATUS_MATH = 7,
  LC_STATUS_IO = 8,
  LC_STATUS_PANIC = 9,
} LcStatus;

// An ideal of an `LcRing`.
typedef struct LcIdeal LcIdeal;

// A polynomial ring.
typedef struct LcRing LcRing;

// Message for the last failed call on this thread, or null. Valid until the next call.
const char *lc_last_error(void);

// Library version as a static string.
const char *lc_version(void);

// Frees a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void lc_string_free(char *s);

// Parses a ring such as `QQ[x, y] grevlex` or `FP(7)[a, b] lex`.
//
// # Safety
// `spec` must be a nul-terminated string; `out` must be writable.
enum LcStatus lc_ring_new(const char *spec, struct LcRing **out);

// # Safety
// `ring` must come from `lc_ring_new` and not be freed twice. Null is ignored.
void lc_ring_free(struct LcRing *ring);

// Builds the ideal generated by a comma-separated polynomial list (`0` is the zero ideal).
//
// # Safety
// `ring` must be a live handle, `gens` nul-terminated, `out` writable.
enum LcStatus lc_ideal_new(const struct LcRing *ring, const char *gens, struct LcIdeal **out);

// # Safety
// `ideal` must come from this library and not be freed twice. Null is ignored.
void lc_ideal_free(struct LcIdeal *ideal);

// Reduced Gröbner basis rendered as `(g1, g2, ...)`; free with `lc_string_free`.
//
// # Safety
// `ideal` must be a live handle and `out` writable.
enum LcStatus lc_ideal_groebner(const struct LcIdeal *ideal, char **out);

// `i : j`.
//
// # Safety
// `i`, `j` must be live handles and `out` writable.
enum LcStatus lc_ideal_quotient(const struct LcIdeal *i,
                                const struct LcIdeal *j,
                                struct LcIdeal **out);

// `i ∩ j`.
//
// # Safety
// `i`, `j` must be live handles and `out` writable.
enum LcStatus lc_ideal_intersect(const struct LcIdeal *i,
                                 const struct LcIdeal *j,
                                 struct LcIdeal **out);

// Ideal equality.
//
// # Safety
// `i`, `j` must be live handles and `out` writable.
enum LcStatus lc_ideal_equal(const struct LcIdeal *i, const struct LcIdeal *j, bool *out);

// `grade_M a` for `M = R/j`; pass null `j` for `M = R`.
//
// # Safety
// `a` must be a live handle, `j` null or live, `out` writable.
enum LcStatus lc_ideal_grade(const struct LcIdeal *a, const struct LcIdeal *j, uintptr_t *out);

// Cohomological dimension `cd(a, R/j)` as bounds; `*lo == *hi` when exact.
//
// # Safety
// `a` must be a live handle, `j` null or live, `lo` and `hi` writable.
enum LcStatus lc_ideal_cd(const struct LcIdeal *a,
                          const struct LcIdeal *j,
                          uintptr_t *lo,
                          uintptr_t *hi);

// Runs an instance file and returns the JSON report and the CLI exit code
// it corresponds to (0 all hold, 1 some fail, 3 resource limit).
//
// # Safety
// `path` must be nul-terminated; `json` and `exit_code` writable.
enum LcStatus lc_run_file_json(const char *path, uintptr_t jobs, char **json, int32_t *exit_code);

#endif  /* LINKCHECK_H */
