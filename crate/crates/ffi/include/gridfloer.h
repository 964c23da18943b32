#ifndef GRIDFLOER_H
#define GRIDFLOER_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GfStatus {
  GF_STATUS_OK = 0,
  GF_STATUS_NULL_POINTER = 1,
  GF_STATUS_INVALID_UTF8 = 2,
  GF_STATUS_INVALID_GRID = 3,
  GF_STATUS_PARSE = 4,
  GF_STATUS_UNKNOWN_NAME = 5,
  GF_STATUS_NOT_A_KNOT = 6,
  GF_STATUS_TOO_LARGE = 7,
  GF_STATUS_INTERNAL = 8,
} GfStatus;

/**
 * Opaque grid handle.
 */
typedef struct GfGrid GfGrid;

/**
 * Opaque report handle.
 */
typedef struct GfReport GfReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a grid from marker rows `o[c]`, `x[c]` for `c < n`.
 *
 * # Safety
 * `o` and `x` must point to `n` readable values; `out` must be writable.
 */
enum GfStatus gf_grid_new(size_t n, const size_t *o, const size_t *x, struct GfGrid **out);

/**
 * Parses the text grid format.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum GfStatus gf_grid_parse(const char *text, struct GfGrid **out);

/**
 * Looks up a built-in grid by name.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum GfStatus gf_grid_builtin(const char *name, struct GfGrid **out);

/**
 * # Safety
 * `grid` must be null or a handle from this library, not yet freed.
 */
void gf_grid_free(struct GfGrid *grid);

/**
 * Grid size, or 0 for a null handle.
 *
 * # Safety
 * `grid` must be null or a live handle.
 */
size_t gf_grid_size(const struct GfGrid *grid);

/**
 * Number of link components, or 0 for a null handle.
 *
 * # Safety
 * `grid` must be null or a live handle.
 */
size_t gf_grid_component_count(const struct GfGrid *grid);

/**
 * Computes the full invariant report. `workers == 0` uses the default pool.
 *
 * # Safety
 * `grid` must be a live handle; `out` must be writable.
 */
enum GfStatus gf_compute_report(const struct GfGrid *grid, size_t workers, struct GfReport **out);

/**
 * # Safety
 * `report` must be null or a live handle.
 */
void gf_report_free(struct GfReport *report);

/**
 * Genus, or -1 for a null handle.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
int32_t gf_report_genus(const struct GfReport *report);

/**
 * 1 if fibered, 0 if not, -1 for a null handle.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
int32_t gf_report_fibered(const struct GfReport *report);

/**
 * Total rank of HFK.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
uint64_t gf_report_hfk_total(const struct GfReport *report);

/**
 * Total rank of the top Alexander grading of HFK.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
uint64_t gf_report_top_dimension(const struct GfReport *report);

/**
 * Coefficient of `t^exp` in the normalized Alexander polynomial.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
int64_t gf_report_alexander_coeff(const struct GfReport *report, int32_t exp);

/**
 * Canonical JSON for the report; free with [`gf_string_free`]. Null on a null handle.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
char *gf_report_to_json(const struct GfReport *report);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void gf_string_free(char *s);

/**
 * Message for the last failure on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *gf_last_error_message(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* GRIDFLOER_H */
