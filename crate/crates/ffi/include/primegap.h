#ifndef PRIMEGAP_H
#define PRIMEGAP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum pg_status {
  PG_STATUS_OK = 0,
  PG_STATUS_NULL_POINTER = 1,
  PG_STATUS_DOMAIN = 2,
  PG_STATUS_RANGE = 3,
  PG_STATUS_PARSE = 4,
  PG_STATUS_IO = 5,
  PG_STATUS_BUDGET = 6,
  PG_STATUS_CONFIG = 7,
  PG_STATUS_UTF8 = 8,
  PG_STATUS_PANIC = 9,
} pg_status;

/**
 * A prime sieve with a fixed upper limit.
 */
typedef struct PgSieve PgSieve;

/**
 * A loaded table of zero ordinates.
 */
typedef struct PgZeroTable PgZeroTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread; empty if none. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *pg_last_error(void);

/**
 * # Safety
 * `path` must be a NUL-terminated string and `out_table` writable.
 */
enum pg_status pg_zero_table_load(const char *path, struct PgZeroTable **out_table);

/**
 * The table compiled into the library.
 *
 * # Safety
 * `out_table` must be writable.
 */
enum pg_status pg_zero_table_bundled(struct PgZeroTable **out_table);

/**
 * # Safety
 * `table` must come from a `pg_zero_table_*` constructor, or be null.
 */
void pg_zero_table_free(struct PgZeroTable *table);

/**
 * Number of ordinates in the table; 0 for a null handle.
 *
 * # Safety
 * `table` must be a live handle or null.
 */
size_t pg_zero_table_len(const struct PgZeroTable *table);

/**
 * `N(T)`, the number of ordinates in `(0, T]`.
 *
 * # Safety
 * `table` must be a live handle and `out_n` writable.
 */
enum pg_status pg_zero_table_count(const struct PgZeroTable *table, double t, size_t *out_n);

/**
 * The sum over zeros `|γ| <= T` of the kernel transform at `(x, h)`.
 *
 * # Safety
 * `table` must be a live handle and `out_value` writable.
 */
enum pg_status pg_zero_table_sigma1(const struct PgZeroTable *table,
                                    double x,
                                    double h,
                                    double t,
                                    double *out_value);

/**
 * A sieve able to answer queries up to `max`.
 *
 * # Safety
 * `out_sieve` must be writable.
 */
enum pg_status pg_sieve_new(uint64_t max, struct PgSieve **out_sieve);

/**
 * # Safety
 * `sieve` must come from [`pg_sieve_new`], or be null.
 */
void pg_sieve_free(struct PgSieve *sieve);

/**
 * Number of primes in `[lo, hi]`.
 *
 * # Safety
 * `sieve` must be a live handle and `out_count` writable.
 */
enum pg_status pg_sieve_prime_count(const struct PgSieve *sieve,
                                    uint64_t lo,
                                    uint64_t hi,
                                    uint64_t *out_count);

/**
 * Smallest prime greater than `n`.
 *
 * # Safety
 * `sieve` must be a live handle and `out_prime` writable.
 */
enum pg_status pg_sieve_next_prime(const struct PgSieve *sieve, uint64_t n, uint64_t *out_prime);

/**
 * `F(y)` with its quadrature error estimate.
 *
 * # Safety
 * `out_value` and `out_err` must be writable (`out_err` may be null).
 */
enum pg_status pg_f_integral(double y, double tol, double *out_value, double *out_err);

/**
 * The constant `α(β)` of the mean-square route.
 *
 * # Safety
 * `out_alpha` must be writable.
 */
enum pg_status pg_alpha_of_beta(double beta, double tol, double *out_alpha);

/**
 * Total of the Taylor-route lower bound at `(x, c, β)`.
 *
 * # Safety
 * `out_value` must be writable.
 */
enum pg_status pg_lower_bound_main(double x, double c, double beta, double *out_value);

/**
 * Total of the mean-square lower bound at `(x, c, β)`.
 *
 * # Safety
 * `out_value` must be writable.
 */
enum pg_status pg_lower_bound_appendix(double x,
                                       double c,
                                       double beta,
                                       double tol,
                                       double *out_value);

/**
 * Run every registered claim and return the JSON report; release it with
 * [`pg_string_free`]. `zeros_path` may be null for the bundled table.
 * `out_all_pass` (may be null) receives 1 when no claim failed.
 *
 * # Safety
 * `zeros_path` must be null or NUL-terminated; `out_json` writable.
 */
enum pg_status pg_verify_all_json(uint64_t sieve_cap,
                                  const char *zeros_path,
                                  char **out_json,
                                  int32_t *out_all_pass);

/**
 * # Safety
 * `s` must come from this library, or be null.
 */
void pg_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* PRIMEGAP_H */
