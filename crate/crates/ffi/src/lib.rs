//! C interface to `propus`.
//!
//! Objects cross the boundary as opaque handles that the caller releases
//! with the matching `*_free` function. Every fallible call returns a
//! [`PropusStatus`]; on failure, [`propus_last_error`] describes what went
//! wrong on the calling thread. Panics never unwind into C.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use propus::arrays::{build_symmetric_hadamard, is_hadamard, is_symmetric_matrix, SquareMatrix};
use propus::catalog::{load_catalog, verify_family};
use propus::format::{parse_family, parse_family_unchecked, write_family};
use propus::params::{enumerate_propus_sets, PropusParameterSet};
use propus::search::{propus_search as run_search, SearchConfig};
use propus::{DifferenceFamily, Error, SymmetricSlot};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropusStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Precondition = 4,
    Integrity = 5,
    Refused = 6,
    /// A search ended without a result, or an index was out of range.
    NotFound = 7,
    /// A caller-supplied buffer is too small; the required size is reported.
    BufferTooSmall = 8,
    Panic = 9,
}

/// A difference family `(A, B, C, D)`.
pub struct PropusFamily {
    inner: DifferenceFamily,
}

/// A square integer matrix.
pub struct PropusMatrix {
    inner: SquareMatrix,
}

/// A parameter set `(v;x,y,y,z;lambda)`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropusParams {
    pub v: usize,
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub lambda: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> PropusStatus {
    match err {
        Error::InvalidInput(_) => PropusStatus::InvalidArgument,
        Error::Precondition(_) => PropusStatus::Precondition,
        Error::Parse { .. } => PropusStatus::Parse,
        Error::Integrity(_) => PropusStatus::Integrity,
        Error::Refused(_) => PropusStatus::Refused,
    }
}

fn fail(status: PropusStatus, message: impl Into<String>) -> PropusStatus {
    set_error(message);
    status
}

fn from_error(err: Error) -> PropusStatus {
    fail(status_of(&err), err.to_string())
}

/// Runs `body`, converting panics into [`PropusStatus::Panic`].
fn guard(body: impl FnOnce() -> PropusStatus) -> PropusStatus {
    clear_error();
    catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|_| fail(PropusStatus::Panic, "internal panic"))
}

unsafe fn text_arg<'a>(text: *const c_char) -> Result<&'a str, PropusStatus> {
    if text.is_null() {
        return Err(fail(PropusStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| fail(PropusStatus::InvalidArgument, "string is not UTF-8"))
}

macro_rules! nonnull {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(PropusStatus::NullPointer, concat!("null argument: ", stringify!($p)));
        })+
    };
}

unsafe fn give<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn propus_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn propus_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses family-file text. With `validate` nonzero the blocks must form a
/// difference family; otherwise damaged families are accepted so they can
/// be passed to [`propus_family_verify`].
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn propus_family_parse(
    text: *const c_char,
    validate: i32,
    out: *mut *mut PropusFamily,
) -> PropusStatus {
    guard(|| {
        nonnull!(out);
        let text = match text_arg(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let parsed = if validate != 0 {
            parse_family(text)
        } else {
            parse_family_unchecked(text)
        };
        match parsed {
            Ok(inner) => {
                give(out, PropusFamily { inner });
                PropusStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `family` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn propus_family_free(family: *mut PropusFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// Writes the family in family-file format to a new string, released with
/// [`propus_string_free`].
///
/// # Safety
/// `family` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn propus_family_to_text(family: *const PropusFamily, out: *mut *mut c_char) -> PropusStatus {
    guard(|| {
        nonnull!(family, out);
        match CString::new(write_family(&(*family).inner)) {
            Ok(s) => {
                *out = s.into_raw();
                PropusStatus::Ok
            }
            Err(_) => fail(PropusStatus::Panic, "interior NUL"),
        }
    })
}

/// # Safety
/// `family` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn propus_family_params(family: *const PropusFamily, out: *mut PropusParams) -> PropusStatus {
    guard(|| {
        nonnull!(family, out);
        *out = params_of((*family).inner.params());
        PropusStatus::Ok
    })
}

/// Copies block `index` (0 to 3, for `A` to `D`) into `buf`. `len` receives
/// the block size; when `cap` is too small nothing is copied and
/// [`PropusStatus::BufferTooSmall`] is returned.
///
/// # Safety
/// `family` must be a live handle, `len` writable, and `buf` valid for `cap`
/// elements (it may be null when `cap` is 0).
#[no_mangle]
pub unsafe extern "C" fn propus_family_block(
    family: *const PropusFamily,
    index: usize,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> PropusStatus {
    guard(|| {
        nonnull!(family, len);
        let Some(block) = (*family).inner.blocks().get(index) else {
            return fail(PropusStatus::NotFound, format!("block index {index} out of range"));
        };
        let elems = block.elements();
        *len = elems.len();
        if cap < elems.len() {
            return fail(PropusStatus::BufferTooSmall, format!("block needs {} entries", elems.len()));
        }
        if !elems.is_empty() {
            nonnull!(buf);
            ptr::copy_nonoverlapping(elems.as_ptr(), buf, elems.len());
        }
        PropusStatus::Ok
    })
}

/// Runs every check on the family; `passed` receives 1 when all pass. The
/// per-check report is available through `report` when it is not null,
/// released with [`propus_string_free`].
///
/// # Safety
/// `family` must be a live handle and `passed` writable; `report` may be
/// null.
#[no_mangle]
pub unsafe extern "C" fn propus_family_verify(
    family: *const PropusFamily,
    passed: *mut i32,
    report: *mut *mut c_char,
) -> PropusStatus {
    guard(|| {
        nonnull!(family, passed);
        let r = verify_family(&(*family).inner, None);
        *passed = i32::from(r.passed());
        if !report.is_null() {
            *report = CString::new(r.to_string()).unwrap_or_default().into_raw();
        }
        PropusStatus::Ok
    })
}

/// Number of bundled families.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn propus_catalog_len(out: *mut usize) -> PropusStatus {
    guard(|| {
        nonnull!(out);
        match load_catalog() {
            Ok(c) => {
                *out = c.len();
                PropusStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Bundled family `index`, as a new handle.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn propus_catalog_get(index: usize, out: *mut *mut PropusFamily) -> PropusStatus {
    guard(|| {
        nonnull!(out);
        match load_catalog() {
            Ok(c) => match c.into_iter().nth(index) {
                Some(entry) => {
                    give(out, PropusFamily { inner: entry.family });
                    PropusStatus::Ok
                }
                None => fail(PropusStatus::NotFound, format!("catalog index {index} out of range")),
            },
            Err(e) => from_error(e),
        }
    })
}

/// Assembles and checks the symmetric Hadamard matrix of a propus family.
///
/// # Safety
/// `family` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn propus_build_symmetric_hadamard(
    family: *const PropusFamily,
    out: *mut *mut PropusMatrix,
) -> PropusStatus {
    guard(|| {
        nonnull!(family, out);
        match build_symmetric_hadamard(&(*family).inner) {
            Ok(inner) => {
                give(out, PropusMatrix { inner });
                PropusStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `matrix` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn propus_matrix_free(matrix: *mut PropusMatrix) {
    if !matrix.is_null() {
        drop(Box::from_raw(matrix));
    }
}

/// Order `n` of the matrix, or 0 for a null handle.
///
/// # Safety
/// `matrix` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn propus_matrix_order(matrix: *const PropusMatrix) -> usize {
    matrix.as_ref().map_or(0, |m| m.inner.order())
}

/// Copies the entries row by row into `buf`, which must hold `n·n` values.
///
/// # Safety
/// `matrix` must be a live handle and `buf` valid for `cap` elements.
#[no_mangle]
pub unsafe extern "C" fn propus_matrix_entries(matrix: *const PropusMatrix, buf: *mut i32, cap: usize) -> PropusStatus {
    guard(|| {
        nonnull!(matrix, buf);
        let m = &(*matrix).inner;
        let n = m.order();
        if cap < n * n {
            return fail(PropusStatus::BufferTooSmall, format!("matrix needs {} entries", n * n));
        }
        for (i, row) in m.rows().enumerate() {
            ptr::copy_nonoverlapping(row.as_ptr(), buf.add(i * n), n);
        }
        PropusStatus::Ok
    })
}

/// `hadamard` and `symmetric` receive 1 or 0.
///
/// # Safety
/// `matrix` must be a live handle; both outputs writable.
#[no_mangle]
pub unsafe extern "C" fn propus_matrix_check(
    matrix: *const PropusMatrix,
    hadamard: *mut i32,
    symmetric: *mut i32,
) -> PropusStatus {
    guard(|| {
        nonnull!(matrix, hadamard, symmetric);
        let m = &(*matrix).inner;
        match is_hadamard(m) {
            Ok(h) => {
                *hadamard = i32::from(h);
                *symmetric = i32::from(is_symmetric_matrix(m));
                PropusStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

fn params_of(p: &PropusParameterSet) -> PropusParams {
    PropusParams {
        v: p.v(),
        x: p.x(),
        y: p.y(),
        z: p.z(),
        lambda: p.lambda(),
    }
}

/// Parameter sets for odd `v ≥ 3`. `count` receives the number of sets;
/// when `cap` is too small nothing is copied and
/// [`PropusStatus::BufferTooSmall`] is returned.
///
/// # Safety
/// `count` must be writable and `buf` valid for `cap` elements (null allowed
/// when `cap` is 0).
#[no_mangle]
pub unsafe extern "C" fn propus_enumerate_params(
    v: usize,
    buf: *mut PropusParams,
    cap: usize,
    count: *mut usize,
) -> PropusStatus {
    guard(|| {
        nonnull!(count);
        let sets = match enumerate_propus_sets(v) {
            Ok(s) => s,
            Err(e) => return from_error(e),
        };
        *count = sets.len();
        if cap < sets.len() {
            return fail(PropusStatus::BufferTooSmall, format!("{} sets", sets.len()));
        }
        if !sets.is_empty() {
            nonnull!(buf);
        }
        for (i, s) in sets.iter().enumerate() {
            *buf.add(i) = params_of(s);
        }
        PropusStatus::Ok
    })
}

/// Single-worker randomized search for one family with `A` symmetric
/// (`slot_d` nonzero: `D` symmetric). Returns [`PropusStatus::NotFound`]
/// when `max_candidates` leaves are generated without a result.
///
/// # Safety
/// `params` must be a NUL-terminated string such as `"(9;3,3,3,3;3)"`;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn propus_search(
    params: *const c_char,
    seed: u64,
    max_candidates: u64,
    slot_d: i32,
    out: *mut *mut PropusFamily,
) -> PropusStatus {
    guard(|| {
        nonnull!(out);
        let parsed: PropusParameterSet = match text_arg(params).map(str::parse) {
            Ok(Ok(p)) => p,
            Ok(Err(e)) => return from_error(e),
            Err(s) => return s,
        };
        let config = SearchConfig {
            seed,
            crown_exponent: 8,
            branch_capacity: 256,
            max_candidates: Some(max_candidates),
            symmetric_slot: if slot_d != 0 { SymmetricSlot::D } else { SymmetricSlot::A },
            ..SearchConfig::default()
        };
        match run_search(&parsed, &config, None) {
            Ok(outcome) => match outcome.families.into_iter().next() {
                Some(inner) => {
                    give(out, PropusFamily { inner });
                    PropusStatus::Ok
                }
                None => fail(PropusStatus::NotFound, "budget exhausted without a family"),
            },
            Err(e) => from_error(e),
        }
    })
}
