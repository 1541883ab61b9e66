#ifndef INNERDIST_H
#define INNERDIST_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum IdCheckKind {
  ID_CHECK_KIND_LATIN = 0,
  ID_CHECK_KIND_PANDIAGONAL = 1,
  // Uses the `a` and `b` arguments as the block shape.
  ID_CHECK_KIND_SUDOKU = 2,
} IdCheckKind;

typedef enum IdSquareKind {
  // Sized by `n`.
  ID_SQUARE_KIND_PLAIN = 0,
  // Sized by `n`.
  ID_SQUARE_KIND_PANDIAGONAL = 1,
  // Sized by `a` and `b`.
  ID_SQUARE_KIND_SUDOKU = 2,
} IdSquareKind;

// Result codes.
typedef enum IdStatus {
  ID_STATUS_OK = 0,
  // A null pointer was passed where a value was required.
  ID_STATUS_NULL_ARGUMENT = 1,
  ID_STATUS_DOMAIN = 2,
  ID_STATUS_PARAMETER = 3,
  // No square of the requested kind exists.
  ID_STATUS_NONEXISTENT = 4,
  // Inner distance of an order-1 square.
  ID_STATUS_UNDEFINED_DISTANCE = 5,
  ID_STATUS_PARSE = 6,
  ID_STATUS_CONSTRUCTION = 7,
  ID_STATUS_NOT_REDUCIBLE = 8,
  // Caller-supplied buffer too small.
  ID_STATUS_BUFFER_TOO_SMALL = 9,
  ID_STATUS_PANIC = 10,
} IdStatus;

// Opaque square handle.
typedef struct IdGrid IdGrid;

// One row of the known-bounds table.
typedef struct IdBounds {
  size_t n;
  size_t lower;
  size_t upper;
  bool exact;
  bool existence;
} IdBounds;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or null. The string
// stays valid until the next call into this library from the same thread.
const char *id_last_error(void);

// Library version as a static NUL-terminated string.
const char *id_version(void);

// Parses a grid from text (rows of space-separated symbols) or JSON.
//
// # Safety
// `text` must be a valid NUL-terminated string; `out` a valid pointer.
enum IdStatus id_grid_parse(const char *text, struct IdGrid **out);

// Builds a grid from `n * n` row-major symbols in `1..=n`.
//
// # Safety
// `cells` must point to `n * n` readable values; `out` a valid pointer.
enum IdStatus id_grid_from_cells(size_t n, const uint32_t *cells, struct IdGrid **out);

// Releases a grid. Null is ignored.
//
// # Safety
// `grid` must come from this library and not be freed twice.
void id_grid_free(struct IdGrid *grid);

// Order of the grid, 0 for null.
//
// # Safety
// `grid` must be null or a live handle.
size_t id_grid_order(const struct IdGrid *grid);

// Symbol at 0-based (row, col), or 0 when out of range.
//
// # Safety
// `grid` must be null or a live handle.
uint32_t id_grid_get(const struct IdGrid *grid, size_t row, size_t col);

// Copies the row-major cells into `buf`, which must hold `n * n` values.
//
// # Safety
// `buf` must point to `len` writable values.
enum IdStatus id_grid_copy_cells(const struct IdGrid *grid, uint32_t *buf, size_t len);

// Text rendering of the grid; release with `id_string_free`. Null on error.
//
// # Safety
// `grid` must be null or a live handle.
char *id_grid_to_text(const struct IdGrid *grid);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void id_string_free(char *s);

// Band/stack shift construction.
//
// # Safety
// `out` must be a valid pointer.
enum IdStatus id_gen_shift(uint64_t n,
                           int64_t r,
                           int64_t c,
                           int64_t alpha,
                           int64_t beta,
                           struct IdGrid **out);

// Each row is the previous one shifted right by `k`.
//
// # Safety
// `out` must be a valid pointer.
enum IdStatus id_gen_shift_by_k(uint64_t n, int64_t k, struct IdGrid **out);

// Square of order `n` with inner distance floor((n-1)/2).
//
// # Safety
// `out` must be a valid pointer.
enum IdStatus id_gen_max_distance(uint64_t n, struct IdGrid **out);

// Pandiagonal square with inner distance (n-3)/2; `Nonexistent` unless
// n = 1 or 5 mod 6.
//
// # Safety
// `out` must be a valid pointer.
enum IdStatus id_gen_pandiagonal(uint64_t n, struct IdGrid **out);

// Best known (a, b)-Sudoku square.
//
// # Safety
// `out` must be a valid pointer.
enum IdStatus id_gen_sudoku(size_t a, size_t b, struct IdGrid **out);

// (2x, 2y)-Sudoku square with inner distance 2xy - x, for 2 <= x <= y.
//
// # Safety
// `out` must be a valid pointer.
enum IdStatus id_gen_even_even(size_t x, size_t y, struct IdGrid **out);

// Validates the grid; `a` and `b` are read only for `Sudoku`.
//
// # Safety
// `grid` must be a live handle and `verdict` a valid pointer.
enum IdStatus id_check(const struct IdGrid *grid,
                       enum IdCheckKind kind,
                       size_t a,
                       size_t b,
                       bool *verdict);

// Minimum adjacent distance of the grid.
//
// # Safety
// `grid` must be a live handle and `out` a valid pointer.
enum IdStatus id_inner_distance(const struct IdGrid *grid, uint32_t *out);

// Known bounds on the maximum inner distance.
//
// # Safety
// `out` must be a valid pointer.
enum IdStatus id_known_bounds(enum IdSquareKind kind,
                              size_t n,
                              size_t a,
                              size_t b,
                              struct IdBounds *out);

// Counts squares with inner distance at least `min_distance`. A zero
// `node_budget` selects the default. `complete` is false when the budget
// ran out, in which case `count` is a lower bound.
//
// # Safety
// `count` and `complete` must be valid pointers.
enum IdStatus id_search_count(enum IdSquareKind kind,
                              size_t n,
                              size_t a,
                              size_t b,
                              uint32_t min_distance,
                              size_t workers,
                              uint64_t node_budget,
                              uint64_t *count,
                              bool *complete);

// Reduces a cyclic square to the circulant with first row 1..n.
// `NotReducible` when the square is not isotopic to a cyclic group table.
//
// # Safety
// `grid` must be a live handle and `out` a valid pointer.
enum IdStatus id_canonicalize(const struct IdGrid *grid, struct IdGrid **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INNERDIST_H */
