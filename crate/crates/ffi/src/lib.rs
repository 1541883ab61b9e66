//! C ABI over the `innerdist` library.
//!
//! Grids cross the boundary as opaque `IdGrid` handles, released with
//! `id_grid_free`. Every fallible call returns an `IdStatus`; on failure
//! `id_last_error` describes what went wrong on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};
use std::ptr;

use innerdist::construct::{
    algorithm1, algorithm2, known_bounds, max_distance_square, pandiagonal_max, shift_by_k,
    sudoku_best, BoundKind, ShiftParams,
};
use innerdist::search::{run_search, Constraint, SearchMode, SearchQuery};
use innerdist::transform::to_circulant_canonical;
use innerdist::{
    inner_distance, validate_latin, validate_pandiagonal, validate_sudoku, Error, SquareGrid,
    SudokuShape,
};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdStatus {
    Ok = 0,
    /// A null pointer was passed where a value was required.
    NullArgument = 1,
    Domain = 2,
    Parameter = 3,
    /// No square of the requested kind exists.
    Nonexistent = 4,
    /// Inner distance of an order-1 square.
    UndefinedDistance = 5,
    Parse = 6,
    Construction = 7,
    NotReducible = 8,
    /// Caller-supplied buffer too small.
    BufferTooSmall = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdCheckKind {
    Latin = 0,
    Pandiagonal = 1,
    /// Uses the `a` and `b` arguments as the block shape.
    Sudoku = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdSquareKind {
    /// Sized by `n`.
    Plain = 0,
    /// Sized by `n`.
    Pandiagonal = 1,
    /// Sized by `a` and `b`.
    Sudoku = 2,
}

/// One row of the known-bounds table.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IdBounds {
    pub n: usize,
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    pub existence: bool,
}

/// Opaque square handle.
pub struct IdGrid {
    grid: SquareGrid,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: IdStatus, msg: impl Into<String>) -> IdStatus {
    set_error(msg.into());
    status
}

fn status_of(e: &Error) -> IdStatus {
    match e {
        Error::Domain(_) => IdStatus::Domain,
        Error::Parameter(_) => IdStatus::Parameter,
        Error::Nonexistence(_) => IdStatus::Nonexistent,
        Error::UndefinedDistance => IdStatus::UndefinedDistance,
        Error::Parse(_) => IdStatus::Parse,
        Error::Construction(_) => IdStatus::Construction,
        Error::NotReducible(_) => IdStatus::NotReducible,
    }
}

impl From<Error> for IdStatus {
    fn from(e: Error) -> Self {
        fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, turning panics into `IdStatus::Panic` and clearing the last
/// error on success.
fn guard(f: impl FnOnce() -> Result<(), IdStatus>) -> IdStatus {
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            IdStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => fail(IdStatus::Panic, "internal panic"),
    }
}

unsafe fn grid_ref<'a>(grid: *const IdGrid) -> Result<&'a SquareGrid, IdStatus> {
    grid.as_ref()
        .map(|g| &g.grid)
        .ok_or_else(|| fail(IdStatus::NullArgument, "grid handle is null"))
}

unsafe fn emit_grid(out: *mut *mut IdGrid, grid: SquareGrid) -> Result<(), IdStatus> {
    if out.is_null() {
        return Err(fail(IdStatus::NullArgument, "output pointer is null"));
    }
    *out = Box::into_raw(Box::new(IdGrid { grid }));
    Ok(())
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), IdStatus> {
    if out.is_null() {
        return Err(fail(IdStatus::NullArgument, "output pointer is null"));
    }
    *out = value;
    Ok(())
}

/// Message for the most recent failure on this thread, or null. The string
/// stays valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn id_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn id_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a grid from text (rows of space-separated symbols) or JSON.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn id_grid_parse(text: *const c_char, out: *mut *mut IdGrid) -> IdStatus {
    guard(|| {
        if text.is_null() {
            return Err(fail(IdStatus::NullArgument, "text is null"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| fail(IdStatus::Parse, "text is not UTF-8"))?;
        let (grid, _) = SquareGrid::parse_any(text)?;
        emit_grid(out, grid)
    })
}

/// Builds a grid from `n * n` row-major symbols in `1..=n`.
///
/// # Safety
/// `cells` must point to `n * n` readable values; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn id_grid_from_cells(
    n: usize,
    cells: *const u32,
    out: *mut *mut IdGrid,
) -> IdStatus {
    guard(|| {
        if cells.is_null() {
            return Err(fail(IdStatus::NullArgument, "cells is null"));
        }
        let len = n
            .checked_mul(n)
            .ok_or_else(|| fail(IdStatus::Domain, "order too large"))?;
        let cells = std::slice::from_raw_parts(cells, len).to_vec();
        emit_grid(out, SquareGrid::from_cells(n, cells)?)
    })
}

/// Releases a grid. Null is ignored.
///
/// # Safety
/// `grid` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn id_grid_free(grid: *mut IdGrid) {
    if !grid.is_null() {
        drop(Box::from_raw(grid));
    }
}

/// Order of the grid, 0 for null.
///
/// # Safety
/// `grid` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn id_grid_order(grid: *const IdGrid) -> usize {
    grid.as_ref().map_or(0, |g| g.grid.order())
}

/// Symbol at 0-based (row, col), or 0 when out of range.
///
/// # Safety
/// `grid` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn id_grid_get(grid: *const IdGrid, row: usize, col: usize) -> u32 {
    match grid.as_ref() {
        Some(g) if row < g.grid.order() && col < g.grid.order() => g.grid.get(row, col),
        _ => 0,
    }
}

/// Copies the row-major cells into `buf`, which must hold `n * n` values.
///
/// # Safety
/// `buf` must point to `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn id_grid_copy_cells(
    grid: *const IdGrid,
    buf: *mut u32,
    len: usize,
) -> IdStatus {
    guard(|| {
        let g = grid_ref(grid)?;
        if buf.is_null() {
            return Err(fail(IdStatus::NullArgument, "buffer is null"));
        }
        let cells = g.cells();
        if len < cells.len() {
            return Err(fail(
                IdStatus::BufferTooSmall,
                format!("need {} cells, buffer holds {len}", cells.len()),
            ));
        }
        std::slice::from_raw_parts_mut(buf, cells.len()).copy_from_slice(cells);
        Ok(())
    })
}

/// Text rendering of the grid; release with `id_string_free`. Null on error.
///
/// # Safety
/// `grid` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn id_grid_to_text(grid: *const IdGrid) -> *mut c_char {
    let mut out = ptr::null_mut();
    guard(|| {
        let text = grid_ref(grid)?.to_text();
        out = CString::new(text).expect("grid text has no NUL").into_raw();
        Ok(())
    });
    out
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn id_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Band/stack shift construction.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn id_gen_shift(
    n: u64,
    r: i64,
    c: i64,
    alpha: i64,
    beta: i64,
    out: *mut *mut IdGrid,
) -> IdStatus {
    guard(|| {
        let p = ShiftParams::new(n, r, c, alpha, beta)?;
        emit_grid(out, algorithm1(&p)?)
    })
}

/// Each row is the previous one shifted right by `k`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn id_gen_shift_by_k(n: u64, k: i64, out: *mut *mut IdGrid) -> IdStatus {
    guard(|| emit_grid(out, shift_by_k(n, k)?))
}

/// Square of order `n` with inner distance floor((n-1)/2).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn id_gen_max_distance(n: u64, out: *mut *mut IdGrid) -> IdStatus {
    guard(|| emit_grid(out, max_distance_square(n)?))
}

/// Pandiagonal square with inner distance (n-3)/2; `Nonexistent` unless
/// n = 1 or 5 mod 6.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn id_gen_pandiagonal(n: u64, out: *mut *mut IdGrid) -> IdStatus {
    guard(|| emit_grid(out, pandiagonal_max(n)?))
}

/// Best known (a, b)-Sudoku square.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn id_gen_sudoku(a: usize, b: usize, out: *mut *mut IdGrid) -> IdStatus {
    guard(|| emit_grid(out, sudoku_best(a, b)?))
}

/// (2x, 2y)-Sudoku square with inner distance 2xy - x, for 2 <= x <= y.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn id_gen_even_even(x: usize, y: usize, out: *mut *mut IdGrid) -> IdStatus {
    guard(|| emit_grid(out, algorithm2(x, y)?))
}

/// Validates the grid; `a` and `b` are read only for `Sudoku`.
///
/// # Safety
/// `grid` must be a live handle and `verdict` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn id_check(
    grid: *const IdGrid,
    kind: IdCheckKind,
    a: usize,
    b: usize,
    verdict: *mut bool,
) -> IdStatus {
    guard(|| {
        let g = grid_ref(grid)?;
        let report = match kind {
            IdCheckKind::Latin => validate_latin(g),
            IdCheckKind::Pandiagonal => validate_pandiagonal(g),
            IdCheckKind::Sudoku => validate_sudoku(g, SudokuShape::new(a, b)?)?,
        };
        write_out(verdict, report.verdict)
    })
}

/// Minimum adjacent distance of the grid.
///
/// # Safety
/// `grid` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn id_inner_distance(grid: *const IdGrid, out: *mut u32) -> IdStatus {
    guard(|| {
        let report = inner_distance(grid_ref(grid)?)?;
        write_out(out, report.inner_distance)
    })
}

fn bound_kind(kind: IdSquareKind, n: usize, a: usize, b: usize) -> BoundKind {
    match kind {
        IdSquareKind::Plain => BoundKind::Plain(n),
        IdSquareKind::Pandiagonal => BoundKind::Pandiagonal(n),
        IdSquareKind::Sudoku => BoundKind::Sudoku { a, b },
    }
}

/// Known bounds on the maximum inner distance.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn id_known_bounds(
    kind: IdSquareKind,
    n: usize,
    a: usize,
    b: usize,
    out: *mut IdBounds,
) -> IdStatus {
    guard(|| {
        let entry = known_bounds(bound_kind(kind, n, a, b))?;
        write_out(
            out,
            IdBounds {
                n: entry.n,
                lower: entry.lower,
                upper: entry.upper,
                exact: entry.exact,
                existence: entry.existence,
            },
        )
    })
}

/// Counts squares with inner distance at least `min_distance`. A zero
/// `node_budget` selects the default. `complete` is false when the budget
/// ran out, in which case `count` is a lower bound.
///
/// # Safety
/// `count` and `complete` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn id_search_count(
    kind: IdSquareKind,
    n: usize,
    a: usize,
    b: usize,
    min_distance: u32,
    workers: usize,
    node_budget: u64,
    count: *mut u64,
    complete: *mut bool,
) -> IdStatus {
    guard(|| {
        let kind = bound_kind(kind, n, a, b);
        let constraint = match kind {
            BoundKind::Plain(_) => Constraint::Plain,
            BoundKind::Pandiagonal(_) => Constraint::Pandiagonal,
            BoundKind::Sudoku { a, b } => Constraint::Sudoku(SudokuShape::new(a, b)?),
        };
        let mut q = SearchQuery::new(kind.order(), constraint, min_distance, SearchMode::Count)
            .with_workers(workers.max(1));
        if node_budget > 0 {
            q = q.with_budget(Some(node_budget));
        }
        let res = run_search(&q)?;
        write_out(count, res.count)?;
        write_out(complete, res.complete)?;
        Ok(())
    })
}

/// Reduces a cyclic square to the circulant with first row 1..n.
/// `NotReducible` when the square is not isotopic to a cyclic group table.
///
/// # Safety
/// `grid` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn id_canonicalize(grid: *const IdGrid, out: *mut *mut IdGrid) -> IdStatus {
    guard(|| {
        let (canon, _) = to_circulant_canonical(grid_ref(grid)?)?;
        emit_grid(out, canon)
    })
}
