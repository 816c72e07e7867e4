#ifndef GECS_H
#define GECS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every fallible entry point.
 */
typedef enum {
  GECS_STATUS_OK = 0,
  GECS_STATUS_NULL_POINTER = 1,
  GECS_STATUS_INVALID_ARGUMENT = 2,
  GECS_STATUS_PARSE = 3,
  GECS_STATUS_DIMENSION_MISMATCH = 4,
  GECS_STATUS_SINGULAR = 5,
  GECS_STATUS_RANK_DEFICIENT = 6,
  GECS_STATUS_NOT_FOUND = 7,
  GECS_STATUS_INVALID_UTF8 = 8,
} GecsStatus;

/**
 * A collection of parity checks.
 */
typedef struct GecsChecks GecsChecks;

/**
 * A binary linear code given by a full-rank parity-check matrix.
 */
typedef struct GecsCode GecsCode;

/**
 * The outcome of a certification run.
 */
typedef struct GecsReport GecsReport;

/**
 * A generic erasure correcting set.
 */
typedef struct GecsSet GecsSet;

/**
 * Message for the most recent failure on this thread, or NULL. The pointer
 * stays valid until the next failing call on this thread.
 */
const char *gecs_last_error_message(void);

/**
 * Releases a string returned by this library.
 */
void gecs_string_free(char *s);

GecsStatus gecs_set_arm(size_t r, size_t m, GecsSet **out);

GecsStatus gecs_set_weber(size_t r, GecsSet **out);

/**
 * Parses the line-oriented set format. `r = 0` infers the dimension from
 * the first line.
 */
GecsStatus gecs_set_parse(const char *text, size_t r, GecsSet **out);

/**
 * Maps every member `a` to `aT`, where `text` holds the rows of an
 * invertible `r × r` matrix `T`.
 */
GecsStatus gecs_set_transform(const GecsSet *set, const char *text, GecsSet **out);

size_t gecs_set_len(const GecsSet *set);

size_t gecs_set_dimension(const GecsSet *set);

/**
 * The set in its line-oriented format; free with [`gecs_string_free`].
 */
char *gecs_set_to_text(const GecsSet *set);

void gecs_set_free(GecsSet *set);

/**
 * Certifies `set` against every rank-`m` matrix. `jobs <= 1` runs
 * serially.
 */
GecsStatus gecs_verify(const GecsSet *set, size_t m, size_t jobs, bool fail_fast, GecsReport **out);

bool gecs_report_passed(const GecsReport *report);

uint64_t gecs_report_matrices_checked(const GecsReport *report);

/**
 * The report in its line-oriented format; free with [`gecs_string_free`].
 */
char *gecs_report_to_text(const GecsReport *report);

void gecs_report_free(GecsReport *report);

/**
 * Random search with `n` draws per attempt. Returns `NOT_FOUND` and
 * writes NULL when every attempt fails.
 */
GecsStatus gecs_random_search(size_t r,
                              size_t m,
                              size_t n,
                              uint64_t seed,
                              size_t max_restarts,
                              GecsSet **out);

GecsStatus gecs_size_formula(size_t r, size_t m, uint64_t *out);

GecsStatus gecs_upper_bound(size_t r, size_t m, double *coefficient, uint64_t *bound);

GecsStatus gecs_required_size_bound(size_t r, size_t m, bool exact_count, uint64_t *out);

/**
 * Parses a parity-check matrix, one row per line. Fails with
 * `RANK_DEFICIENT` if the rows are dependent.
 */
GecsStatus gecs_code_parse(const char *text, GecsCode **out);

GecsStatus gecs_code_hamming(size_t r, GecsCode **out);

size_t gecs_code_length(const GecsCode *code);

size_t gecs_code_codimension(const GecsCode *code);

void gecs_code_free(GecsCode *code);

/**
 * `{aH : a ∈ set}` for the code's parity-check matrix `H`.
 */
GecsStatus gecs_checks_generate(const GecsSet *set, const GecsCode *code, GecsChecks **out);

GecsStatus gecs_checks_parse(const char *text, GecsChecks **out);

size_t gecs_checks_len(const GecsChecks *checks);

char *gecs_checks_to_text(const GecsChecks *checks);

void gecs_checks_free(GecsChecks *checks);

/**
 * Peels the erasures (`'?'`) out of `word`. `decoded` receives whether
 * every erasure was resolved; `trace` (optional) receives the step-by-step
 * trace, to be freed with [`gecs_string_free`].
 */
GecsStatus gecs_peel_decode(const GecsChecks *checks,
                            const char *word,
                            bool *decoded,
                            char **trace);

/**
 * Whether every correctable erasure pattern of size at most `m` is
 * resolved by peeling with `checks` on `code`.
 */
GecsStatus gecs_is_m_erasure_decoding(const GecsChecks *checks,
                                      const GecsCode *code,
                                      size_t m,
                                      bool *out);

#endif  /* GECS_H */
