//! C ABI over `gridfloer`.
//!
//! Grids and reports are opaque heap handles owned by the caller and released
//! with the matching `_free` function. Fallible calls return a [`GfStatus`];
//! the message of the most recent failure on the calling thread is available
//! from [`gf_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gridfloer::{Error, GridDiagram, GridError, HomologyOptions, KnotReport};

/// Opaque grid handle.
pub struct GfGrid(GridDiagram);

/// Opaque report handle.
pub struct GfReport(KnotReport);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidGrid = 3,
    Parse = 4,
    UnknownName = 5,
    NotAKnot = 6,
    TooLarge = 7,
    Internal = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(status: GfStatus, message: impl Into<String>) -> GfStatus {
    let msg = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
    status
}

fn grid_status(e: &GridError) -> GfStatus {
    match e {
        GridError::Parse { .. } => GfStatus::Parse,
        GridError::UnknownName(_) => GfStatus::UnknownName,
        _ => GfStatus::InvalidGrid,
    }
}

fn status_of(e: &Error) -> GfStatus {
    match e {
        Error::Grid(g) => grid_status(g),
        Error::NotAKnot { .. } => GfStatus::NotAKnot,
        Error::TooLarge { .. } => GfStatus::TooLarge,
        _ => GfStatus::Internal,
    }
}

fn guard(f: impl FnOnce() -> GfStatus) -> GfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => set_error(GfStatus::Internal, "panic inside gridfloer"),
    }
}

unsafe fn c_str<'a>(s: *const c_char) -> Result<&'a str, GfStatus> {
    if s.is_null() {
        return Err(set_error(GfStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| set_error(GfStatus::InvalidUtf8, "string is not UTF-8"))
}

unsafe fn store_grid(out: *mut *mut GfGrid, g: GridDiagram) -> GfStatus {
    *out = Box::into_raw(Box::new(GfGrid(g)));
    GfStatus::Ok
}

/// Builds a grid from marker rows `o[c]`, `x[c]` for `c < n`.
///
/// # Safety
/// `o` and `x` must point to `n` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_grid_new(
    n: usize,
    o: *const usize,
    x: *const usize,
    out: *mut *mut GfGrid,
) -> GfStatus {
    guard(|| {
        if o.is_null() || x.is_null() || out.is_null() {
            return set_error(GfStatus::NullPointer, "null argument");
        }
        let o = std::slice::from_raw_parts(o, n).to_vec();
        let x = std::slice::from_raw_parts(x, n).to_vec();
        match GridDiagram::new(n, o, x) {
            Ok(g) => store_grid(out, g),
            Err(e) => set_error(grid_status(&e), e.to_string()),
        }
    })
}

/// Parses the text grid format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_grid_parse(text: *const c_char, out: *mut *mut GfGrid) -> GfStatus {
    guard(|| {
        if out.is_null() {
            return set_error(GfStatus::NullPointer, "null argument");
        }
        let text = match c_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match GridDiagram::parse(text) {
            Ok(g) => store_grid(out, g),
            Err(e) => set_error(grid_status(&e), e.to_string()),
        }
    })
}

/// Looks up a built-in grid by name.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_grid_builtin(name: *const c_char, out: *mut *mut GfGrid) -> GfStatus {
    guard(|| {
        if out.is_null() {
            return set_error(GfStatus::NullPointer, "null argument");
        }
        let name = match c_str(name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match gridfloer::builtin(name) {
            Ok(g) => store_grid(out, g),
            Err(e) => set_error(grid_status(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `grid` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gf_grid_free(grid: *mut GfGrid) {
    if !grid.is_null() {
        drop(Box::from_raw(grid));
    }
}

/// Grid size, or 0 for a null handle.
///
/// # Safety
/// `grid` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gf_grid_size(grid: *const GfGrid) -> usize {
    grid.as_ref().map_or(0, |g| g.0.size())
}

/// Number of link components, or 0 for a null handle.
///
/// # Safety
/// `grid` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gf_grid_component_count(grid: *const GfGrid) -> usize {
    grid.as_ref().map_or(0, |g| g.0.component_count())
}

/// Computes the full invariant report. `workers == 0` uses the default pool.
///
/// # Safety
/// `grid` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_compute_report(
    grid: *const GfGrid,
    workers: usize,
    out: *mut *mut GfReport,
) -> GfStatus {
    guard(|| {
        let Some(grid) = grid.as_ref() else {
            return set_error(GfStatus::NullPointer, "null grid");
        };
        if out.is_null() {
            return set_error(GfStatus::NullPointer, "null argument");
        }
        let opts = if workers == 0 {
            HomologyOptions::default()
        } else {
            HomologyOptions::with_workers(workers)
        };
        match gridfloer::full_report_with(&grid.0, &opts) {
            Ok(r) => {
                *out = Box::into_raw(Box::new(GfReport(r)));
                GfStatus::Ok
            }
            Err(e) => set_error(status_of(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gf_report_free(report: *mut GfReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Genus, or -1 for a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gf_report_genus(report: *const GfReport) -> i32 {
    report.as_ref().map_or(-1, |r| r.0.genus)
}

/// 1 if fibered, 0 if not, -1 for a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gf_report_fibered(report: *const GfReport) -> i32 {
    report.as_ref().map_or(-1, |r| r.0.fibered as i32)
}

/// Total rank of HFK.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gf_report_hfk_total(report: *const GfReport) -> u64 {
    report.as_ref().map_or(0, |r| r.0.hfk_total())
}

/// Total rank of the top Alexander grading of HFK.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gf_report_top_dimension(report: *const GfReport) -> u64 {
    report.as_ref().map_or(0, |r| r.0.top_grading_dimension())
}

/// Coefficient of `t^exp` in the normalized Alexander polynomial.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gf_report_alexander_coeff(report: *const GfReport, exp: i32) -> i64 {
    report.as_ref().map_or(0, |r| r.0.alexander.coeff(exp))
}

/// Canonical JSON for the report; free with [`gf_string_free`]. Null on a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gf_report_to_json(report: *const GfReport) -> *mut c_char {
    match report.as_ref() {
        Some(r) => CString::new(r.0.to_json()).map_or(ptr::null_mut(), CString::into_raw),
        None => {
            set_error(GfStatus::NullPointer, "null report");
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
