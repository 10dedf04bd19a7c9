// SPDX-License-Identifier: Apache-2.0

//! C ABI over `quadricode`.
//!
//! Objects are opaque handles created by `qc_*_new`/`qc_*_build` and released
//! with the matching `qc_*_free`. Every fallible call returns a [`QcStatus`];
//! on failure the message is available from [`qc_last_error`] on the same
//! thread until the next failing call. Strings returned by the library are
//! released with [`qc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use quadricode::analysis::{min_distance_exact, run_suite, Choice, Context, Selection, DEFAULT_BUDGET};
use quadricode::cli::{build_code, DMode, Format, GlobalArgs, Variety};
use quadricode::codes::LinearCode;
use quadricode::field::Field;
use quadricode::Error;

/// Result of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QcStatus {
    Ok = 0,
    /// A required pointer was null.
    NullPointer = 1,
    /// Malformed input: bad field order, string, modulus or element.
    InvalidArgument = 2,
    /// Parameters outside the range the construction supports.
    OutOfRange = 3,
    /// Exhaustive search would exceed the budget.
    BudgetExceeded = 4,
    /// No suite of that name.
    UnknownSuite = 5,
    /// A caller buffer is too small.
    BufferTooSmall = 6,
    /// A panic was caught at the boundary.
    Internal = 7,
}

/// Code families that can be built.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QcVariety {
    Hyperbolic = 0,
    Elliptic = 1,
    Segre = 2,
    Twisted = 3,
    Bch = 4,
    Bch0 = 5,
    BchExt = 6,
    Bch0Ext = 7,
}

/// A finite field.
pub struct QcField(Field);

/// A linear code with labelled coordinates.
pub struct QcCode(LinearCode);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> QcStatus {
    match e {
        Error::OutOfRange(_) | Error::FieldTooLarge { .. } => QcStatus::OutOfRange,
        Error::BudgetExceeded { .. } => QcStatus::BudgetExceeded,
        Error::UnknownSuite(_) => QcStatus::UnknownSuite,
        _ => QcStatus::InvalidArgument,
    }
}

fn fail(status: QcStatus, msg: impl Into<String>) -> QcStatus {
    set_error(msg);
    status
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), QcStatus>) -> QcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QcStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(QcStatus::Internal, "internal panic"),
    }
}

fn lift<T>(r: quadricode::Result<T>) -> Result<T, QcStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), QcStatus> {
    if p.is_null() {
        Err(fail(QcStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

/// # Safety
/// `p` is null or a valid NUL-terminated string.
unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, QcStatus> {
    non_null(p, what)?;
    CStr::from_ptr(p).to_str().map_err(|_| fail(QcStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

fn to_c_string(s: String) -> Result<*mut c_char, QcStatus> {
    CString::new(s).map(CString::into_raw).map_err(|_| fail(QcStatus::Internal, "string contains NUL"))
}

fn choice(alternate: bool) -> Choice {
    if alternate {
        Choice::Alternate
    } else {
        Choice::Default
    }
}

/// Message of the last failed call on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn qc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn qc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` is null or came from this library and was not freed before.
#[no_mangle]
pub unsafe extern "C" fn qc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates the field with `q` elements and its default modulus.
///
/// # Safety
/// `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qc_field_new(q: u64, out: *mut *mut QcField) -> QcStatus {
    guard(|| {
        non_null(out, "out")?;
        let f = lift(Field::of_order(q))?;
        *out = Box::into_raw(Box::new(QcField(f)));
        Ok(())
    })
}

/// Creates GF(p^e) with the monic modulus `coeffs[0..len]`, constant term first.
///
/// # Safety
/// `coeffs` points to `len` values and `out` is valid.
#[no_mangle]
pub unsafe extern "C" fn qc_field_with_modulus(
    p: u64,
    e: u32,
    coeffs: *const u32,
    len: usize,
    out: *mut *mut QcField,
) -> QcStatus {
    guard(|| {
        non_null(out, "out")?;
        non_null(coeffs, "coeffs")?;
        let m = std::slice::from_raw_parts(coeffs, len);
        let f = lift(Field::with_modulus(p, e, m))?;
        *out = Box::into_raw(Box::new(QcField(f)));
        Ok(())
    })
}

/// # Safety
/// `f` is null or a handle from this library not freed before.
#[no_mangle]
pub unsafe extern "C" fn qc_field_free(f: *mut QcField) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `f` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qc_field_order(f: *const QcField) -> u32 {
    f.as_ref().map_or(0, |f| f.0.order())
}

/// # Safety
/// `f` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qc_field_characteristic(f: *const QcField) -> u32 {
    f.as_ref().map_or(0, |f| f.0.characteristic())
}

enum Op {
    Add,
    Mul,
    Div,
}

unsafe fn binary(f: *const QcField, a: u32, b: u32, out: *mut u32, op: Op) -> QcStatus {
    guard(|| {
        non_null(f, "field")?;
        non_null(out, "out")?;
        let f = &(*f).0;
        let (a, b) = (lift(f.elem(a.into()))?, lift(f.elem(b.into()))?);
        let c = match op {
            Op::Add => f.add(a, b),
            Op::Mul => f.mul(a, b),
            Op::Div => lift(f.div(a, b))?,
        };
        *out = c.enc();
        Ok(())
    })
}

/// Sum of two elements given by their encodings.
///
/// # Safety
/// `f` is a live handle and `out` is valid.
#[no_mangle]
pub unsafe extern "C" fn qc_field_add(f: *const QcField, a: u32, b: u32, out: *mut u32) -> QcStatus {
    binary(f, a, b, out, Op::Add)
}

/// Product of two elements given by their encodings.
///
/// # Safety
/// `f` is a live handle and `out` is valid.
#[no_mangle]
pub unsafe extern "C" fn qc_field_mul(f: *const QcField, a: u32, b: u32, out: *mut u32) -> QcStatus {
    binary(f, a, b, out, Op::Mul)
}

/// Quotient `a / b`; fails on `b = 0`.
///
/// # Safety
/// `f` is a live handle and `out` is valid.
#[no_mangle]
pub unsafe extern "C" fn qc_field_div(f: *const QcField, a: u32, b: u32, out: *mut u32) -> QcStatus {
    binary(f, a, b, out, Op::Div)
}

/// Builds a code. `d` is the number of copies of P^1 (2 for the quadrics).
/// `alternate` selects the second modulus and the last primitive element.
///
/// # Safety
/// `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qc_code_build(
    variety: QcVariety,
    q: u64,
    d: u32,
    s: u32,
    alternate: bool,
    out: *mut *mut QcCode,
) -> QcStatus {
    guard(|| {
        non_null(out, "out")?;
        let v = match variety {
            QcVariety::Hyperbolic => Variety::Hyperbolic,
            QcVariety::Elliptic => Variety::Elliptic,
            QcVariety::Segre => Variety::Segre,
            QcVariety::Twisted => Variety::Twisted,
            QcVariety::Bch => Variety::Bch,
            QcVariety::Bch0 => Variety::Bch0,
            QcVariety::BchExt => Variety::BchExt,
            QcVariety::Bch0Ext => Variety::Bch0Ext,
        };
        let args = GlobalArgs {
            q: Some(q),
            d: Some(d),
            s: Some(s),
            variety: Some(v),
            bidegree: None,
            dmode: DMode::Skip,
            budget: DEFAULT_BUDGET,
            format: Format::Json,
            out: None,
            seed: 2024,
            modulus: None,
            alternate,
            timings: false,
        };
        let code = lift(build_code(&args))?;
        *out = Box::into_raw(Box::new(QcCode(code)));
        Ok(())
    })
}

/// # Safety
/// `c` is null or a handle from this library not freed before.
#[no_mangle]
pub unsafe extern "C" fn qc_code_free(c: *mut QcCode) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Code length, or 0 for a null handle.
///
/// # Safety
/// `c` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qc_code_length(c: *const QcCode) -> usize {
    c.as_ref().map_or(0, |c| c.0.length())
}

/// Code dimension, or 0 for a null handle.
///
/// # Safety
/// `c` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qc_code_dimension(c: *const QcCode) -> usize {
    c.as_ref().map_or(0, |c| c.0.dimension())
}

/// Copies the reduced generator matrix row by row into `buf` as element
/// encodings. `buf` needs `dimension * length` entries.
///
/// # Safety
/// `c` is a live handle and `buf` points to `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn qc_code_generator(c: *const QcCode, buf: *mut u32, len: usize) -> QcStatus {
    guard(|| {
        non_null(c, "code")?;
        non_null(buf, "buf")?;
        let basis = (*c).0.basis();
        let need = basis.rows() * basis.cols();
        if len < need {
            return Err(fail(QcStatus::BufferTooSmall, format!("generator needs {need} entries, got {len}")));
        }
        let out = std::slice::from_raw_parts_mut(buf, need);
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = basis.get(i / basis.cols(), i % basis.cols()).enc();
        }
        Ok(())
    })
}

/// Exact minimum distance, visiting at most `budget` scalar classes
/// (0 selects the default budget).
///
/// # Safety
/// `c` is a live handle and `out` is valid.
#[no_mangle]
pub unsafe extern "C" fn qc_code_min_distance(c: *const QcCode, budget: u64, out: *mut usize) -> QcStatus {
    guard(|| {
        non_null(c, "code")?;
        non_null(out, "out")?;
        let budget = if budget == 0 { DEFAULT_BUDGET } else { budget as u128 };
        let report = lift(min_distance_exact(&(*c).0, budget))?;
        match report.d_exact {
            Some(d) => {
                *out = d;
                Ok(())
            }
            None => Err(fail(QcStatus::Internal, "no exact distance computed")),
        }
    })
}

/// The code as JSON. Free the result with `qc_string_free`.
///
/// # Safety
/// `c` is a live handle and `out` is valid.
#[no_mangle]
pub unsafe extern "C" fn qc_code_to_json(c: *const QcCode, out: *mut *mut c_char) -> QcStatus {
    guard(|| {
        non_null(c, "code")?;
        non_null(out, "out")?;
        *out = to_c_string((*c).0.to_json().to_string())?;
        Ok(())
    })
}

/// Runs a verification suite on its default instances. Writes the number of
/// passing and total instances, and optionally the reports as JSON lines
/// (`report` may be null; free it with `qc_string_free`).
///
/// # Safety
/// `name` is a NUL-terminated string; `passed` and `total` are valid;
/// `report` is null or valid.
#[no_mangle]
pub unsafe extern "C" fn qc_verify_suite(
    name: *const c_char,
    alternate: bool,
    passed: *mut u32,
    total: *mut u32,
    report: *mut *mut c_char,
) -> QcStatus {
    guard(|| {
        let name = str_arg(name, "name")?;
        non_null(passed, "passed")?;
        non_null(total, "total")?;
        let ctx = Context::with_choice(choice(alternate));
        let reports = lift(run_suite(name, &ctx, &Selection::default()))?;
        *passed = reports.iter().filter(|r| r.passed()).count() as u32;
        *total = reports.len() as u32;
        if !report.is_null() {
            let lines: Vec<String> = reports.iter().map(|r| serde_json::to_string(r).expect("plain data")).collect();
            *report = to_c_string(lines.join("\n"))?;
        }
        Ok(())
    })
}
