#ifndef FREESUB_H
#define FREESUB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FreesubStatus {
  FREESUB_STATUS_OK = 0,
  FREESUB_STATUS_NULL_POINTER = 1,
  FREESUB_STATUS_INVALID_UTF8 = 2,
  FREESUB_STATUS_PARSE = 3,
  FREESUB_STATUS_RANK_MISMATCH = 4,
  FREESUB_STATUS_NOT_SUBGROUP = 5,
  FREESUB_STATUS_NOT_MEMBER = 6,
  FREESUB_STATUS_INVALID_PRIME = 7,
  FREESUB_STATUS_BUDGET_EXCEEDED = 8,
  FREESUB_STATUS_INTERNAL_INCONSISTENCY = 9,
  FREESUB_STATUS_OUT_OF_RANGE = 10,
  FREESUB_STATUS_PANIC = 11,
} FreesubStatus;

/**
 * Opaque subgroup handle.
 */
typedef struct FreesubGraph FreesubGraph;

/**
 * Opaque handle to a canonically ordered set of subgroups.
 */
typedef struct FreesubSet FreesubSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy of the last error message on this thread, or null if the last
 * call succeeded. Free with `freesub_string_free`.
 */
char *freesub_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void freesub_string_free(char *s);

/**
 * Subgroup generated by comma separated words such as `"ab,acba"`.
 *
 * # Safety
 * `gens` must be a valid C string and `out` writable.
 */
enum FreesubStatus freesub_graph_build(size_t rank, const char *gens, struct FreesubGraph **out);

/**
 * # Safety
 * `json` must be a valid C string and `out` writable.
 */
enum FreesubStatus freesub_graph_from_json(const char *json, struct FreesubGraph **out);

/**
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum FreesubStatus freesub_graph_to_json(const struct FreesubGraph *g, char **out);

/**
 * # Safety
 * `g` must be null or a handle from this library, not used afterwards.
 */
void freesub_graph_free(struct FreesubGraph *g);

/**
 * Rank of the subgroup (not of the ambient group).
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum FreesubStatus freesub_graph_rank(const struct FreesubGraph *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum FreesubStatus freesub_graph_vertex_count(const struct FreesubGraph *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle, `word` a valid C string, `out` writable.
 */
enum FreesubStatus freesub_graph_contains(const struct FreesubGraph *g,
                                          const char *word,
                                          bool *out);

/**
 * # Safety
 * `a`, `b` must be live handles and `out` writable.
 */
enum FreesubStatus freesub_graph_equal(const struct FreesubGraph *a,
                                       const struct FreesubGraph *b,
                                       bool *out);

/**
 * Whether `a ≤ b`.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` writable.
 */
enum FreesubStatus freesub_graph_leq(const struct FreesubGraph *a,
                                     const struct FreesubGraph *b,
                                     bool *out);

/**
 * # Safety
 * `a`, `b` must be live handles and `out` writable.
 */
enum FreesubStatus freesub_intersect(const struct FreesubGraph *a,
                                     const struct FreesubGraph *b,
                                     struct FreesubGraph **out);

/**
 * # Safety
 * `a`, `b` must be live handles and `out` writable.
 */
enum FreesubStatus freesub_join(const struct FreesubGraph *a,
                                const struct FreesubGraph *b,
                                struct FreesubGraph **out);

/**
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum FreesubStatus freesub_fringe(const struct FreesubGraph *g, struct FreesubSet **out);

/**
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum FreesubStatus freesub_algebraic_extensions(const struct FreesubGraph *g,
                                                struct FreesubSet **out);

/**
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum FreesubStatus freesub_set_len(const struct FreesubSet *s, size_t *out);

/**
 * New handle for member `index` of the set.
 *
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum FreesubStatus freesub_set_get(const struct FreesubSet *s,
                                   size_t index,
                                   struct FreesubGraph **out);

/**
 * # Safety
 * `s` must be null or a handle from this library, not used afterwards.
 */
void freesub_set_free(struct FreesubSet *s);

/**
 * Tests `pure`, `p-pure:<p>`, `malnormal`, `ealg-closed` or `compressed`.
 *
 * # Safety
 * `g` must be a live handle, `property` a valid C string, `out` writable.
 */
enum FreesubStatus freesub_is_property(const struct FreesubGraph *g,
                                       const char *property,
                                       bool *out);

/**
 * Closure for `pure`, `p-pure:<p>`, `malnormal` or `ealg`.
 *
 * # Safety
 * `g` must be a live handle, `property` a valid C string, `out` writable.
 */
enum FreesubStatus freesub_closure(const struct FreesubGraph *g,
                                   const char *property,
                                   struct FreesubGraph **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FREESUB_H */
