//! C ABI over `tanglecat`: parse diagrams, compose them in any framework,
//! and read results back as strings.
//!
//! Handles are opaque and owned by the caller once returned; free them with
//! the matching `*_free`. Strings returned through `char **` are freed with
//! `tc_string_free`. Every fallible call returns a `TcStatus`; the message
//! for the last failure on the calling thread is available from
//! `tc_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use tanglecat::alexander::{alexander_poly, compose_diagram, PipelineSpec};
use tanglecat::crosscheck::{run_suite, Suite};
use tanglecat::diagram::{parse_diagram, TangleDiagram};
use tanglecat::oszdecat::Grading;
use tanglecat::statespace::{BasisKind, Framework, GradedMatrix, Side};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Compute = 5,
    CheckFailed = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TcFramework {
    Rt = 0,
    Viro = 1,
    Osz = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TcBasis {
    Native = 0,
    Dual = 1,
    ModifiedRight = 2,
    ModifiedLeft = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TcSide {
    Right = 0,
    Left = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TcGrading {
    Single = 0,
    Multi = 1,
}

/// A parsed tangle diagram.
pub struct TcDiagram(TangleDiagram);

/// A composite matrix.
pub struct TcMatrix(GradedMatrix);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: TcStatus, msg: impl ToString) -> TcStatus {
    let c = CString::new(msg.to_string().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
    status
}

fn give_string(s: String, out: *mut *mut c_char) -> TcStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            TcStatus::Ok
        }
        Err(e) => fail(TcStatus::Compute, e),
    }
}

/// Message of the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parse diagram text into `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tc_diagram_parse(text: *const c_char, out: *mut *mut TcDiagram) -> TcStatus {
    if text.is_null() || out.is_null() {
        return fail(TcStatus::NullPointer, "null argument");
    }
    let s = match CStr::from_ptr(text).to_str() {
        Ok(s) => s,
        Err(e) => return fail(TcStatus::InvalidUtf8, e),
    };
    match parse_diagram(s) {
        Ok(d) => {
            *out = Box::into_raw(Box::new(TcDiagram(d)));
            TcStatus::Ok
        }
        Err(e) => fail(TcStatus::Parse, e),
    }
}

/// # Safety
/// `d` must come from `tc_diagram_parse` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tc_diagram_free(d: *mut TcDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// 1 if the diagram is a closed knot diagram ending in the terminal
/// minimum, 0 otherwise (including NULL).
///
/// # Safety
/// `d` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tc_diagram_is_closed(d: *const TcDiagram) -> i32 {
    d.as_ref().is_some_and(|d| d.0.is_closed()) as i32
}

/// Number of events in the diagram, or -1 for NULL.
///
/// # Safety
/// `d` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tc_diagram_num_events(d: *const TcDiagram) -> i64 {
    d.as_ref().map_or(-1, |d| d.0.events.len() as i64)
}

/// Normalized Alexander polynomial of a closed diagram, e.g. `t - 1 + t^-1`.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tc_alexander(d: *const TcDiagram, out: *mut *mut c_char) -> TcStatus {
    let (Some(d), false) = (d.as_ref(), out.is_null()) else {
        return fail(TcStatus::NullPointer, "null argument");
    };
    if !d.0.is_closed() {
        return fail(TcStatus::InvalidArgument, "diagram is not closed");
    }
    match alexander_poly(&d.0) {
        Ok(p) => give_string(p.pretty_single(), out),
        Err(e) => fail(TcStatus::Compute, e),
    }
}

/// Compose the diagram in the given framework. `basis` is ignored for
/// `Osz`, which always uses idempotents on the `trunc` side.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tc_eval(
    d: *const TcDiagram,
    framework: TcFramework,
    basis: TcBasis,
    trunc: TcSide,
    grading: TcGrading,
    out: *mut *mut TcMatrix,
) -> TcStatus {
    let (Some(d), false) = (d.as_ref(), out.is_null()) else {
        return fail(TcStatus::NullPointer, "null argument");
    };
    if d.0.has_terminal() && !d.0.is_closed() {
        return fail(TcStatus::InvalidArgument, "the terminal minimum needs an empty top boundary");
    }
    let trunc = match trunc {
        TcSide::Right => Side::Right,
        TcSide::Left => Side::Left,
    };
    let fw = match framework {
        TcFramework::Rt => Framework::Rt,
        TcFramework::Viro => Framework::Viro,
        TcFramework::Osz => Framework::Osz,
    };
    let basis = match (fw, basis) {
        (Framework::Osz, _) => BasisKind::Idempotent(trunc),
        (_, TcBasis::Native) => BasisKind::Native,
        (_, TcBasis::Dual) => BasisKind::Dual,
        (_, TcBasis::ModifiedRight) => BasisKind::Modified(Side::Right),
        (_, TcBasis::ModifiedLeft) => BasisKind::Modified(Side::Left),
    };
    let grading = match grading {
        TcGrading::Single => Grading::Single,
        TcGrading::Multi => Grading::Multi,
    };
    match compose_diagram(&d.0, &PipelineSpec { framework: fw, basis, trunc, grading }) {
        Ok(m) => {
            *out = Box::into_raw(Box::new(TcMatrix(m)));
            TcStatus::Ok
        }
        Err(e) => fail(TcStatus::Compute, e),
    }
}

/// Number of rows and columns of a matrix.
///
/// # Safety
/// `m` must be a live handle; `rows` and `cols` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn tc_matrix_shape(m: *const TcMatrix, rows: *mut usize, cols: *mut usize) -> TcStatus {
    let (Some(m), false, false) = (m.as_ref(), rows.is_null(), cols.is_null()) else {
        return fail(TcStatus::NullPointer, "null argument");
    };
    *rows = m.0.codomain.dim();
    *cols = m.0.domain.dim();
    TcStatus::Ok
}

/// Entry at (row subset, column subset) in canonical rendering.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tc_matrix_entry(m: *const TcMatrix, row: u64, col: u64, out: *mut *mut c_char) -> TcStatus {
    let (Some(m), false) = (m.as_ref(), out.is_null()) else {
        return fail(TcStatus::NullPointer, "null argument");
    };
    give_string(m.0.get(row, col).to_string(), out)
}

/// The matrix as JSON: `{domain, codomain, entries: [[row, col, poly]]}`.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tc_matrix_json(m: *const TcMatrix, out: *mut *mut c_char) -> TcStatus {
    let (Some(m), false) = (m.as_ref(), out.is_null()) else {
        return fail(TcStatus::NullPointer, "null argument");
    };
    give_string(m.0.to_json().to_string(), out)
}

/// # Safety
/// `m` must come from `tc_eval` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tc_matrix_free(m: *mut TcMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Run every elementary check with boundaries up to `max_n` points (at most
/// 8). Writes the number of failures to `failures` when non-NULL.
///
/// # Safety
/// `failures` must be NULL or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tc_verify(max_n: u32, failures: *mut u64) -> TcStatus {
    if max_n > 8 {
        return fail(TcStatus::InvalidArgument, "max_n is limited to 8");
    }
    let n: usize = run_suite(Suite::All, max_n as usize).iter().map(|(_, r)| r.failures.len()).sum();
    if let Some(f) = failures.as_mut() {
        *f = n as u64;
    }
    if n == 0 {
        TcStatus::Ok
    } else {
        fail(TcStatus::CheckFailed, format!("{n} checks failed"))
    }
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
