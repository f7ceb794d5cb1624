#ifndef ASYMTREE_H
#define ASYMTREE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum AsymtreeStatus {
  ASYMTREE_STATUS_OK = 0,
  ASYMTREE_STATUS_NULL_POINTER = 1,
  ASYMTREE_STATUS_INVALID_UTF8 = 2,
  ASYMTREE_STATUS_PARSE = 3,
  /**
   * The requested object does not exist, e.g. no asymmetrizing set.
   */
  ASYMTREE_STATUS_NOT_FOUND = 4,
  /**
   * Input exceeds a size limit of the brute-force routines.
   */
  ASYMTREE_STATUS_TOO_LARGE = 5,
  /**
   * Any other failure reported by the library.
   */
  ASYMTREE_STATUS_FAILED = 6,
  ASYMTREE_STATUS_PANIC = 7,
} AsymtreeStatus;

/**
 * A finite rooted graph.
 */
typedef struct AsymtreeGraph AsymtreeGraph;

/**
 * A finitely presented tree.
 */
typedef struct AsymtreePresentation AsymtreePresentation;

/**
 * A finite rooted or unrooted tree.
 */
typedef struct AsymtreeTree AsymtreeTree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next call on the same thread; do not free.
 */
const char *asymtree_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void asymtree_string_free(char *s);

/**
 * Parses a rooted bracket tree or a `tree unrooted` edge list.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum AsymtreeStatus asymtree_tree_parse(const char *text, struct AsymtreeTree **out);

/**
 * # Safety
 * `tree` must come from [`asymtree_tree_parse`] and not have been freed.
 */
void asymtree_tree_free(struct AsymtreeTree *tree);

/**
 * Number of vertices.
 *
 * # Safety
 * `tree` must be a live handle and `out` writable.
 */
enum AsymtreeStatus asymtree_tree_len(const struct AsymtreeTree *tree, size_t *out);

/**
 * Whether the tree has a root.
 *
 * # Safety
 * `tree` must be a live handle and `out` writable.
 */
enum AsymtreeStatus asymtree_tree_is_rooted(const struct AsymtreeTree *tree, bool *out);

/**
 * Canonical code as a new string.
 *
 * # Safety
 * `tree` must be a live handle and `out` writable.
 */
enum AsymtreeStatus asymtree_tree_canonical_code(const struct AsymtreeTree *tree, char **out);

/**
 * Number of inequivalent asymmetrizing sets, in decimal.
 *
 * # Safety
 * `tree` must be a live handle and `out` writable.
 */
enum AsymtreeStatus asymtree_tree_count(const struct AsymtreeTree *tree, char **out);

/**
 * Motion. `*asymmetric` is set when no automorphism moves anything, and
 * `*moved` is then 0.
 *
 * # Safety
 * `tree` must be a live handle and both outputs writable.
 */
enum AsymtreeStatus asymtree_tree_motion(const struct AsymtreeTree *tree,
                                         size_t *moved,
                                         bool *asymmetric);

/**
 * The first asymmetrizing set, rendered as `{a,b}`; `NotFound` if none.
 *
 * # Safety
 * `tree` must be a live handle and `out` writable.
 */
enum AsymtreeStatus asymtree_tree_find(const struct AsymtreeTree *tree, char **out);

/**
 * Checks a comma-separated label list.
 *
 * # Safety
 * `tree` must be a live handle, `labels` NUL-terminated and `out` writable.
 */
enum AsymtreeStatus asymtree_tree_verify(const struct AsymtreeTree *tree,
                                         const char *labels,
                                         bool *out);

/**
 * Parses a presentation (`name: child*mult, ...` per line).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum AsymtreeStatus asymtree_presentation_parse(const char *text,
                                                struct AsymtreePresentation **out);

/**
 * # Safety
 * `p` must come from [`asymtree_presentation_parse`] and not have been
 * freed.
 */
void asymtree_presentation_free(struct AsymtreePresentation *p);

/**
 * Asymmetrizing count as a cardinal, e.g. `0`, `24` or `beth_1`.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum AsymtreeStatus asymtree_presentation_count(const struct AsymtreePresentation *p, char **out);

/**
 * Full report as one `key=value` line: classification, size, motion,
 * count, rank when defined, and the counting rule.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum AsymtreeStatus asymtree_presentation_report(const struct AsymtreePresentation *p, char **out);

/**
 * Parses a `graph root <LABEL>` edge list.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum AsymtreeStatus asymtree_graph_parse(const char *text, struct AsymtreeGraph **out);

/**
 * # Safety
 * `g` must come from [`asymtree_graph_parse`] and not have been freed.
 */
void asymtree_graph_free(struct AsymtreeGraph *g);

/**
 * Component-wise asymmetrization of a rooted graph. On success writes the
 * set as `{a,b}`; `NotFound` when the procedure fails, with the reason in
 * the last error.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum AsymtreeStatus asymtree_graph_asymmetrize(const struct AsymtreeGraph *g, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ASYMTREE_H */
