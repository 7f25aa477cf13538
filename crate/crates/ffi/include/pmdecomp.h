#ifndef PMDECOMP_H
#define PMDECOMP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum PmdStatus {
  PMD_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  PMD_STATUS_NULL_POINTER = 1,
  /**
   * Text was not UTF-8 or not the expected JSON.
   */
  PMD_STATUS_INVALID_JSON = 2,
  /**
   * The hypergraph or matching violates its invariants.
   */
  PMD_STATUS_INVALID_INPUT = 3,
  /**
   * A search ran out of budget.
   */
  PMD_STATUS_BUDGET_EXCEEDED = 4,
  /**
   * A certificate failed replay.
   */
  PMD_STATUS_VERIFICATION_FAILED = 5,
  /**
   * An outcome that a theorem rules out.
   */
  PMD_STATUS_THEOREM_VIOLATED = 6,
  /**
   * A panic inside the library.
   */
  PMD_STATUS_INTERNAL = 7,
} PmdStatus;

/**
 * Opaque decomposition handle.
 */
typedef struct PmdDecomposition PmdDecomposition;

/**
 * Opaque hypergraph handle.
 */
typedef struct PmdHypergraph PmdHypergraph;

/**
 * A static, NUL-terminated description of `status`.
 */
const char *pmd_status_message(enum PmdStatus status);

/**
 * Parses `{"n": .., "edges": [[..], ..]}`.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum PmdStatus pmd_hypergraph_from_json(const char *json, struct PmdHypergraph **out);

/**
 * All `r`-subsets of `1..=n`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PmdStatus pmd_hypergraph_complete(uint32_t n, size_t r, struct PmdHypergraph **out);

/**
 * # Safety
 * `h` must be null or a handle from this library not yet freed.
 */
void pmd_hypergraph_free(struct PmdHypergraph *h);

/**
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum PmdStatus pmd_hypergraph_edge_count(const struct PmdHypergraph *h, size_t *out);

/**
 * Decides positivity of the matching given as `edge_count` edges of the
 * hypergraph's size, stored back to back in `vertices`.
 *
 * # Safety
 * `h` must be a live handle, `vertices` must point to
 * `edge_count * rank` values (or may be null when `edge_count` is 0) and
 * `out` must be a valid pointer.
 */
enum PmdStatus pmd_is_positive_matching(const struct PmdHypergraph *h,
                                        const uint32_t *vertices,
                                        size_t edge_count,
                                        bool *out);

/**
 * The certified band decomposition of the complete `r`-uniform
 * hypergraph on `n` vertices.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PmdStatus pmd_decompose_complete(uint32_t n, size_t r, struct PmdDecomposition **out);

/**
 * The exact `pmd` of `h` within `budget` search nodes. `decomposition` may
 * be null when the witness is not wanted.
 *
 * # Safety
 * `h` must be a live handle, `pmd` a valid pointer, and `decomposition`
 * null or valid.
 */
enum PmdStatus pmd_exact(const struct PmdHypergraph *h,
                         uint64_t budget,
                         size_t *pmd,
                         struct PmdDecomposition **decomposition);

/**
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum PmdStatus pmd_decomposition_part_count(const struct PmdDecomposition *d, size_t *out);

/**
 * Replays every certificate. Returns `Ok` or `VerificationFailed`.
 *
 * # Safety
 * `d` must be a live handle.
 */
enum PmdStatus pmd_decomposition_verify(const struct PmdDecomposition *d);

/**
 * Serializes to JSON. Release the string with [`pmd_string_free`].
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum PmdStatus pmd_decomposition_to_json(const struct PmdDecomposition *d, char **out);

/**
 * Parses a decomposition document without verifying it.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum PmdStatus pmd_decomposition_from_json(const char *json, struct PmdDecomposition **out);

/**
 * # Safety
 * `d` must be null or a handle from this library not yet freed.
 */
void pmd_decomposition_free(struct PmdDecomposition *d);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void pmd_string_free(char *s);

#endif  /* PMDECOMP_H */
