#ifndef ZFC_H
#define ZFC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum ZfcMode {
  ZFC_MODE_FAITHFUL = 0,
  ZFC_MODE_BEST_FEASIBLE = 1,
} ZfcMode;

typedef enum ZfcStatus {
  ZFC_STATUS_OK = 0,
  ZFC_STATUS_NULL_POINTER = 1,
  ZFC_STATUS_INVALID_UTF8 = 2,
  ZFC_STATUS_IO = 3,
  ZFC_STATUS_PARSE = 4,
  ZFC_STATUS_DIMENSION = 5,
  ZFC_STATUS_DOMAIN = 6,
  ZFC_STATUS_SIZE_GUARD = 7,
  ZFC_STATUS_INVALID_CONFIG = 8,
  ZFC_STATUS_BUFFER_TOO_SMALL = 9,
  ZFC_STATUS_PANIC = 10,
} ZfcStatus;

// Opaque problem instance.
typedef struct ZfcInstance ZfcInstance;

// Opaque result of `zfc_solve`.
typedef struct ZfcRunReport ZfcRunReport;

// Annealing parameters. Obtain defaults from `zfc_anneal_config_default`.
typedef struct ZfcAnnealConfig {
  double t0;
  double alpha;
  double t_stop;
  size_t epoch_len;
  double epsilon;
  uint64_t seed;
  enum ZfcMode mode;
  size_t chains;
} ZfcAnnealConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failing call on this thread, or an empty
// string. Valid until the next call into this library on the same thread.
const char *zfc_last_error_message(void);

struct ZfcAnnealConfig zfc_anneal_config_default(void);

// Parses a pattern matrix written as rows of `0` and `x`.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum ZfcStatus zfc_instance_from_matrix_text(const char *text, struct ZfcInstance **out);

// Builds an instance from `len` directed edges `src[k] -> dst[k]` on `n`
// vertices.
//
// # Safety
// `src` and `dst` must point to `len` elements each (or `len` is 0);
// `out` must be valid.
enum ZfcStatus zfc_instance_from_edges(size_t n,
                                       const size_t *src,
                                       const size_t *dst,
                                       size_t len,
                                       struct ZfcInstance **out);

// Loads a matrix or edge-list file, detecting the format.
//
// # Safety
// `path` must be a NUL-terminated string and `out` a valid pointer.
enum ZfcStatus zfc_instance_load(const char *path, struct ZfcInstance **out);

// # Safety
// `inst` must be null or a handle from this library not yet freed.
void zfc_instance_free(struct ZfcInstance *inst);

// Number of states, or 0 for a null handle.
//
// # Safety
// `inst` must be null or a live handle.
size_t zfc_instance_vertex_count(const struct ZfcInstance *inst);

// Whether driving the states `ids[0..len]` gives strong structural
// controllability.
//
// # Safety
// `inst` must be live, `ids` must point to `len` elements, `out` valid.
enum ZfcStatus zfc_verify(const struct ZfcInstance *inst, const size_t *ids, size_t len, bool *out);

// Penalised cost of a candidate set.
//
// # Safety
// As for `zfc_verify`.
enum ZfcStatus zfc_cost(const struct ZfcInstance *inst,
                        const size_t *ids,
                        size_t len,
                        double epsilon,
                        double *out);

// Runs the annealer. A null `config` means defaults.
//
// # Safety
// `inst` must be live; `config` null or valid; `out` valid.
enum ZfcStatus zfc_solve(const struct ZfcInstance *inst,
                         const struct ZfcAnnealConfig *config,
                         struct ZfcRunReport **out);

// # Safety
// `report` must be null or a live handle.
size_t zfc_report_cardinality(const struct ZfcRunReport *report);

// # Safety
// `report` must be null or a live handle.
bool zfc_report_feasible(const struct ZfcRunReport *report);

// # Safety
// `report` must be null or a live handle.
uint64_t zfc_report_iterations(const struct ZfcRunReport *report);

// Copies the output set into `buf`. `*out_len` always receives the set
// size; `ZFC_STATUS_BUFFER_TOO_SMALL` is returned when `cap` is short.
//
// # Safety
// `report` live, `buf` writable for `cap` elements, `out_len` valid.
enum ZfcStatus zfc_report_output_set(const struct ZfcRunReport *report,
                                     size_t *buf,
                                     size_t cap,
                                     size_t *out_len);

// Full report as JSON. Release the string with `zfc_string_free`.
//
// # Safety
// `report` live and `out` valid.
enum ZfcStatus zfc_report_to_json(const struct ZfcRunReport *report, char **out);

// # Safety
// `s` must be null or a string returned by this library.
void zfc_string_free(char *s);

// # Safety
// `report` must be null or a handle not yet freed.
void zfc_report_free(struct ZfcRunReport *report);

// Exact minimum input-set size by enumeration; fails with
// `ZFC_STATUS_SIZE_GUARD` above `max_n` states.
//
// # Safety
// `inst` live and `out` valid.
enum ZfcStatus zfc_exact_optimum(const struct ZfcInstance *inst, size_t max_n, size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZFC_H */
