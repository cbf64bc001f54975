#ifndef LIEAFF_H
#define LIEAFF_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result code of every fallible call.
 */
typedef enum LieaffStatus {
  LIEAFF_STATUS_OK = 0,
  LIEAFF_STATUS_NULL_POINTER = 1,
  LIEAFF_STATUS_INVALID_UTF8 = 2,
  /*
   Malformed JSON or coefficient strings.
   */
  LIEAFF_STATUS_PARSE = 3,
  /*
   Well-formed input that is not a Lie algebra, or an unknown name.
   */
  LIEAFF_STATUS_INVALID_ALGEBRA = 4,
  LIEAFF_STATUS_INTERNAL = 5,
} LieaffStatus;

typedef enum LieaffVerdict {
  LIEAFF_VERDICT_YES = 0,
  LIEAFF_VERDICT_NO = 1,
  LIEAFF_VERDICT_UNKNOWN = 2,
} LieaffVerdict;

/*
 Opaque handle to a validated Lie algebra.
 */
typedef struct LieaffAlgebra LieaffAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parses an algebra from its JSON description.

 # Safety
 `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum LieaffStatus lieaff_algebra_from_json(const char *json, struct LieaffAlgebra **out);

/*
 Looks up a built-in algebra: `abelian3`, `heis3`, `sol3` or `sl2`.

 # Safety
 `name` must be a NUL-terminated string and `out` a writable pointer.
 */
enum LieaffStatus lieaff_algebra_builtin(const char *name, struct LieaffAlgebra **out);

/*
 Releases a handle. Null is ignored.

 # Safety
 `g` must come from this library and not be used afterwards.
 */
void lieaff_algebra_free(struct LieaffAlgebra *g);

/*
 # Safety
 `g` must be a live handle and `out` a writable pointer.
 */
enum LieaffStatus lieaff_algebra_dim(const struct LieaffAlgebra *g, uintptr_t *out);

/*
 Decides existence of a flat torsion-free invariant connection, using
 `starts` numerical starts from `seed` when a search is needed.

 # Safety
 `g` must be a live handle and `out` a writable pointer.
 */
enum LieaffStatus lieaff_decide(const struct LieaffAlgebra *g,
                                uint32_t starts,
                                uint64_t seed,
                                enum LieaffVerdict *out);

/*
 Full analysis report as JSON. Free the result with
 [`lieaff_string_free`].

 # Safety
 `g` must be a live handle and `out` a writable pointer.
 */
enum LieaffStatus lieaff_analyze_json(const struct LieaffAlgebra *g,
                                      uint32_t starts,
                                      uint64_t seed,
                                      char **out);

/*
 The three-dimensional classification table as JSON.

 # Safety
 `out` must be a writable pointer.
 */
enum LieaffStatus lieaff_classify_dim3_json(uint32_t starts, uint64_t seed, char **out);

/*
 Copy of the last error message on this thread, or null if the last call
 succeeded. Free with [`lieaff_string_free`].
 */
char *lieaff_last_error(void);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not be used afterwards.
 */
void lieaff_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIEAFF_H */
