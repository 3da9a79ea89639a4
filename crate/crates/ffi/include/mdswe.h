#ifndef MDSWE_H
#define MDSWE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of an FFI call.
 */
typedef enum MdsweStatus {
  MDSWE_STATUS_OK = 0,
  MDSWE_STATUS_NULL_POINTER = 1,
  MDSWE_STATUS_UTF8 = 2,
  MDSWE_STATUS_PARSE = 3,
  MDSWE_STATUS_FIELD = 4,
  MDSWE_STATUS_CODE = 5,
  MDSWE_STATUS_PARTITION = 6,
  MDSWE_STATUS_BUDGET = 7,
  MDSWE_STATUS_INVALID_ARGUMENT = 8,
  MDSWE_STATUS_NOT_MDS = 9,
  MDSWE_STATUS_BUFFER_TOO_SMALL = 10,
  MDSWE_STATUS_IO = 11,
  MDSWE_STATUS_INTERNAL = 12,
  MDSWE_STATUS_PANIC = 13,
} MdsweStatus;

/**
 * A linear code, with its MDS parameters when known.
 */
typedef struct MdsweCode MdsweCode;

/**
 * A partition weight enumerator.
 */
typedef struct MdsweTable MdsweTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL after a
 * successful one. The pointer stays valid until the next call on the
 * same thread and must not be freed.
 */
const char *mdswe_last_error(void);

/**
 * # Safety
 * `s` is NULL or a string returned by this library and not yet freed.
 */
void mdswe_string_free(char *s);

/**
 * Builds a code from a description such as `rs:8:7:3`, `rm1:3`,
 * `dual:rs:16:15:11` or `file:path.json`.
 *
 * # Safety
 * `spec` is a NUL-terminated string; `code_out` is writable.
 */
enum MdsweStatus mdswe_code_from_spec(const char *spec, struct MdsweCode **code_out);

/**
 * Builds a code from a row-major `k x n` generator over GF(q).
 *
 * # Safety
 * `rows` points to `k * n` readable values; `code_out` is writable.
 */
enum MdsweStatus mdswe_code_from_generator(uint64_t q,
                                           size_t k,
                                           size_t n,
                                           const uint32_t *rows,
                                           struct MdsweCode **code_out);

/**
 * # Safety
 * `code` is NULL or a handle from this library and not yet freed.
 */
void mdswe_code_free(struct MdsweCode *code);

/**
 * Length of the code, or 0 for NULL.
 *
 * # Safety
 * `code` is NULL or a live handle.
 */
size_t mdswe_code_length(const struct MdsweCode *code);

/**
 * Dimension of the code, or 0 for NULL.
 *
 * # Safety
 * `code` is NULL or a live handle.
 */
size_t mdswe_code_dimension(const struct MdsweCode *code);

/**
 * Field order, or 0 for NULL.
 *
 * # Safety
 * `code` is NULL or a live handle.
 */
uint64_t mdswe_code_field_order(const struct MdsweCode *code);

/**
 * Whether the handle carries MDS parameters (Reed-Solomon codes and
 * their duals).
 *
 * # Safety
 * `code` is NULL or a live handle.
 */
bool mdswe_code_is_mds(const struct MdsweCode *code);

/**
 * # Safety
 * `code` is a live handle; `dual_out` is writable.
 */
enum MdsweStatus mdswe_code_dual(const struct MdsweCode *code, struct MdsweCode **dual_out);

/**
 * Closed-form partition weight enumerator of an MDS code over contiguous
 * blocks of the given sizes. `blocks == 0` means a single block.
 *
 * # Safety
 * `code` is a live handle; `sizes` has `blocks` readable entries;
 * `table_out` is writable.
 */
enum MdsweStatus mdswe_pwgf(const struct MdsweCode *code,
                            const size_t *sizes,
                            size_t blocks,
                            struct MdsweTable **table_out);

/**
 * Partition weight enumerator by enumerating every codeword. A budget of
 * 0 selects the default codeword limit.
 *
 * # Safety
 * As for [`mdswe_pwgf`].
 */
enum MdsweStatus mdswe_brute_force(const struct MdsweCode *code,
                                   const size_t *sizes,
                                   size_t blocks,
                                   uint64_t max_codewords,
                                   struct MdsweTable **table_out);

/**
 * Two-block enumerator of the dual code, from the enumerator of an
 * `[n, k]` code over GF(q).
 *
 * # Safety
 * `table` is a live handle; `dual_out` is writable.
 */
enum MdsweStatus mdswe_macwilliams(const struct MdsweTable *table,
                                   uint64_t q,
                                   size_t k,
                                   struct MdsweTable **dual_out);

/**
 * # Safety
 * `table` is NULL or a handle from this library and not yet freed.
 */
void mdswe_table_free(struct MdsweTable *table);

/**
 * Number of nonzero entries, or 0 for NULL.
 *
 * # Safety
 * `table` is NULL or a live handle.
 */
size_t mdswe_table_len(const struct MdsweTable *table);

/**
 * Number of blocks, or 0 for NULL.
 *
 * # Safety
 * `table` is NULL or a live handle.
 */
size_t mdswe_table_blocks(const struct MdsweTable *table);

/**
 * Copies the block sizes into `sizes_out`, which holds `cap` entries.
 *
 * # Safety
 * `table` is a live handle; `sizes_out` has `cap` writable entries.
 */
enum MdsweStatus mdswe_table_sizes(const struct MdsweTable *table, size_t *sizes_out, size_t cap);

/**
 * Entry `index` in lexicographic profile order: the profile goes to
 * `profile_out` (`cap` entries) and the decimal count to `count_out`.
 *
 * # Safety
 * `table` is a live handle; `profile_out` has `cap` writable entries;
 * `count_out` is writable.
 */
enum MdsweStatus mdswe_table_entry(const struct MdsweTable *table,
                                   size_t index,
                                   size_t *profile_out,
                                   size_t cap,
                                   char **count_out);

/**
 * Decimal count at `profile` (zero when absent).
 *
 * # Safety
 * `table` is a live handle; `profile` has `len` readable entries;
 * `count_out` is writable.
 */
enum MdsweStatus mdswe_table_get(const struct MdsweTable *table,
                                 const size_t *profile,
                                 size_t len,
                                 char **count_out);

/**
 * Total number of codewords, as a decimal string.
 *
 * # Safety
 * `table` is a live handle; `count_out` is writable.
 */
enum MdsweStatus mdswe_table_total(const struct MdsweTable *table, char **count_out);

/**
 * JSON document with the partition and every nonzero entry, in the same
 * layout as the `mdswe pwe` command.
 *
 * # Safety
 * `table` is a live handle; `json_out` is writable.
 */
enum MdsweStatus mdswe_table_to_json(const struct MdsweTable *table, char **json_out);

/**
 * # Safety
 * `json` is a NUL-terminated string; `table_out` is writable.
 */
enum MdsweStatus mdswe_table_from_json(const char *json, struct MdsweTable **table_out);

/**
 * Exact equality of two tables; false when either is NULL.
 *
 * # Safety
 * Both arguments are NULL or live handles.
 */
bool mdswe_table_equal(const struct MdsweTable *a, const struct MdsweTable *b);

/**
 * Whether every coordinate carries weight `h E(h) / n` in each weight
 * class `h`. Writes the number of violating (coordinate, weight) pairs to
 * `witnesses_out` when it is not NULL.
 *
 * # Safety
 * `code` is a live handle; `holds_out` is writable; `witnesses_out` is
 * NULL or writable.
 */
enum MdsweStatus mdswe_property_a(const struct MdsweCode *code,
                                  uint64_t max_codewords,
                                  bool *holds_out,
                                  size_t *witnesses_out);

/**
 * Codeword error probability of bounded-distance decoding on a q-ary
 * symmetric channel with symbol error probability `p`.
 *
 * # Safety
 * `code` is a live handle; `prob_out` is writable.
 */
enum MdsweStatus mdswe_cep_bm(const struct MdsweCode *code, double p, double *prob_out);

/**
 * Symbol error probability of bounded-distance decoding; see
 * [`mdswe_cep_bm`].
 *
 * # Safety
 * As for [`mdswe_cep_bm`].
 */
enum MdsweStatus mdswe_sep_bm(const struct MdsweCode *code, double p, double *prob_out);

/**
 * Bit and symbol error probabilities seen by an `(n, k)` code over
 * GF(2^m) with BPSK at `gamma_db` (Eb/N0 in dB).
 *
 * # Safety
 * `p_bit_out` and `p_sym_out` are writable.
 */
enum MdsweStatus mdswe_channel(double gamma_db,
                               size_t n,
                               size_t k,
                               uint32_t m,
                               double *p_bit_out,
                               double *p_sym_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MDSWE_H */
