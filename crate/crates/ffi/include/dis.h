#ifndef DIS_H
#define DIS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum DisStatus {
  DIS_STATUS_OK = 0,
  DIS_STATUS_NULL_POINTER = 1,
  DIS_STATUS_INVALID_UTF8 = 2,
  DIS_STATUS_PARSE = 3,
  DIS_STATUS_OUT_OF_RANGE = 4,
  DIS_STATUS_LIMIT_EXCEEDED = 5,
  // The monomials are provably not equivalent.
  DIS_STATUS_NOT_EQUIVALENT = 6,
  // The search budget ran out before a verdict.
  DIS_STATUS_INCONCLUSIVE = 7,
  DIS_STATUS_REPLAY_FAILED = 8,
  DIS_STATUS_INVALID = 9,
  // A Rust panic was caught at the boundary.
  DIS_STATUS_INTERNAL = 10,
} DisStatus;

// A labeled block partition of the unit square.
typedef struct DisPartition DisPartition;

// A tree monomial together with its leaf identifiers.
typedef struct DisTree DisTree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a
// success. Valid until the next call on this thread; do not free.
const char *dis_last_error_message(void);

// # Safety
// `s` must be null or a string returned by this library.
void dis_string_free(char *s);

// Parses infix text such as `"((a h b) v c)"`.
//
// # Safety
// `text` must be a NUL-terminated string and `out` writable.
enum DisStatus dis_tree_parse(const char *text, struct DisTree **out);

// Parses `text` using the identifiers of `reference`, so that equal
// letters get equal labels in both trees.
//
// # Safety
// `text` must be a NUL-terminated string, `reference` a valid handle and
// `out` writable.
enum DisStatus dis_tree_parse_like(const char *text,
                                   const struct DisTree *reference,
                                   struct DisTree **out);

// # Safety
// `tree` must be null or a handle from [`dis_tree_parse`], freed once.
void dis_tree_free(struct DisTree *tree);

// # Safety
// `tree` must be a valid handle and `out` writable.
enum DisStatus dis_tree_arity(const struct DisTree *tree, size_t *out);

// The monomial with its original identifiers.
//
// # Safety
// `tree` must be a valid handle and `out` writable.
enum DisStatus dis_tree_to_string(const struct DisTree *tree, char **out);

// The associativity normal form, with `x<k>` labels.
//
// # Safety
// `tree` must be a valid handle and `out` writable.
enum DisStatus dis_tree_to_alternating_string(const struct DisTree *tree, char **out);

// Size of the class of `tree` under associativity and interchange,
// exploring at most `budget` monomials.
//
// # Safety
// `tree` must be a valid handle; `size` and `exhausted` writable.
enum DisStatus dis_closure_size(const struct DisTree *tree,
                                size_t budget,
                                size_t *size,
                                bool *exhausted);

// Decides whether `a` rewrites to `b`. On [`DisStatus::Ok`] writes a
// certificate in JSON to `certificate`; otherwise returns
// [`DisStatus::NotEquivalent`] or [`DisStatus::Inconclusive`].
//
// # Safety
// `a` and `b` must be valid handles and `certificate` writable.
enum DisStatus dis_check_equivalence(const struct DisTree *a,
                                     const struct DisTree *b,
                                     size_t budget,
                                     char **certificate);

// Replays a JSON certificate; on success writes the final monomial.
//
// # Safety
// `json` must be a NUL-terminated string and `final_tree` writable.
enum DisStatus dis_certificate_replay(const char *json, char **final_tree);

// The geometric realization of `tree`.
//
// # Safety
// `tree` must be a valid handle and `out` writable.
enum DisStatus dis_partition_from_tree(const struct DisTree *tree, struct DisPartition **out);

// # Safety
// `p` must be null or a handle from [`dis_partition_from_tree`], freed once.
void dis_partition_free(struct DisPartition *p);

// # Safety
// `p` must be a valid handle and `out` writable.
enum DisStatus dis_partition_block_count(const struct DisPartition *p, size_t *out);

// One `x1 x2 y1 y2 label` line per block.
//
// # Safety
// `p` must be a valid handle and `out` writable.
enum DisStatus dis_partition_to_text(const struct DisPartition *p, char **out);

// Number of binary monomial shapes with `n` leaves.
//
// # Safety
// `out` must be writable.
enum DisStatus dis_count_shapes(size_t n, uint64_t *out);

// Number of associativity classes with `n` leaves.
//
// # Safety
// `out` must be writable.
enum DisStatus dis_count_alternating(size_t n, uint64_t *out);

// Number of associativity classes with `n` leaves admitting no
// interchange.
//
// # Safety
// `out` must be writable.
enum DisStatus dis_count_isolated(size_t n, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIS_H */
