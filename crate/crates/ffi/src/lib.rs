//! C ABI for the kernel: opaque series handles, status codes, and
//! NUL-terminated strings.
//!
//! Conventions:
//! - every function returns `HfStatus`; out-parameters are written only on
//!   `HF_STATUS_OK`
//! - `HfSeries` handles are created by this library and released with
//!   `hf_series_free`; strings returned through `char**` are released with
//!   `hf_string_free`
//! - the last error message is thread-local; read it with
//!   `hf_last_error_message`
//! - depth 0 means "infer from the expression"
//!
//! Safety: callers must pass handles created by this library (or null,
//! which is reported as a status), NUL-terminated strings, and writable
//! out-pointers; handles and strings are freed exactly once.
#![allow(clippy::missing_safety_doc)] // conventions documented above

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;

use hahnfield::error::Error;
use hahnfield::eval::{eval_text, Value};
use hahnfield::exponent::ConvexLevel;
use hahnfield::order;
use hahnfield::parse::parse_exponent;
use hahnfield::scenario;
use hahnfield::series::Series;
use hahnfield::valuation;

/// Opaque handle to a truncated generalized power series.
pub struct HfSeries(Series);

/// Status codes for every FFI entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    DepthMismatch = 4,
    DivisionByZero = 5,
    Indeterminate = 6,
    DomainError = 7,
    InternalError = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> HfStatus {
    match err {
        Error::Parse { .. } => HfStatus::ParseError,
        Error::DepthMismatch { .. } | Error::LevelOutOfRange { .. } => HfStatus::DepthMismatch,
        Error::DivisionByZero => HfStatus::DivisionByZero,
        Error::IndeterminateLeading
        | Error::IndeterminateSign
        | Error::IndeterminateCoefficient { .. }
        | Error::IndeterminateTailSign => HfStatus::Indeterminate,
        Error::Internal(_) => HfStatus::InternalError,
        Error::Eval { source, .. } => status_of(source),
        _ => HfStatus::DomainError,
    }
}

fn fail(err: Error) -> HfStatus {
    let status = status_of(&err);
    set_error(err.to_string());
    status
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, HfStatus> {
    if ptr.is_null() {
        set_error("null string pointer".into());
        return Err(HfStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string is not valid UTF-8".into());
        HfStatus::InvalidUtf8
    })
}

fn write_series(out: *mut *mut HfSeries, s: Series) -> HfStatus {
    if out.is_null() {
        set_error("null output pointer".into());
        return HfStatus::NullPointer;
    }
    unsafe { *out = Box::into_raw(Box::new(HfSeries(s))) };
    HfStatus::Ok
}

fn write_string(out: *mut *mut c_char, text: String) -> HfStatus {
    if out.is_null() {
        set_error("null output pointer".into());
        return HfStatus::NullPointer;
    }
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            HfStatus::Ok
        }
        Err(_) => {
            set_error("result contained an interior NUL".into());
            HfStatus::InternalError
        }
    }
}

unsafe fn borrow<'a>(handle: *const HfSeries) -> Result<&'a Series, HfStatus> {
    if handle.is_null() {
        set_error("null series handle".into());
        return Err(HfStatus::NullPointer);
    }
    Ok(&(*handle).0)
}

/// Copies the last error message into `buf` (truncated to `len` bytes,
/// always NUL-terminated) and returns the full message length.
#[no_mangle]
pub unsafe extern "C" fn hf_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_ref().map(|c| c.as_bytes()).unwrap_or(b"");
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Parses and evaluates an expression into a series handle. `depth` 0 infers
/// the depth; `prec` may be null for the default horizon.
#[no_mangle]
pub unsafe extern "C" fn hf_series_eval(
    expr: *const c_char,
    depth: usize,
    prec: *const c_char,
    out: *mut *mut HfSeries,
) -> HfStatus {
    let expr = match read_str(expr) {
        Ok(s) => s,
        Err(st) => return st,
    };
    let prec = if prec.is_null() {
        None
    } else {
        match read_str(prec).map(parse_exponent) {
            Ok(Ok(p)) => Some(p),
            Ok(Err(e)) => return fail(e),
            Err(st) => return st,
        }
    };
    let depth = if depth == 0 { None } else { Some(depth) };
    match eval_text(expr, depth, prec) {
        Ok(Value::Series(s)) => write_series(out, s),
        Ok(Value::Val(_)) => {
            set_error("expression evaluates to a value-group element, not a series".into());
            HfStatus::DomainError
        }
        Err(e) => fail(e),
    }
}

#[no_mangle]
pub unsafe extern "C" fn hf_series_clone(
    handle: *const HfSeries,
    out: *mut *mut HfSeries,
) -> HfStatus {
    match borrow(handle) {
        Ok(s) => write_series(out, s.clone()),
        Err(st) => st,
    }
}

#[no_mangle]
pub unsafe extern "C" fn hf_series_free(handle: *mut HfSeries) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

#[no_mangle]
pub unsafe extern "C" fn hf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Canonical text form; parseable by `hf_series_eval`.
#[no_mangle]
pub unsafe extern "C" fn hf_series_to_string(
    handle: *const HfSeries,
    out: *mut *mut c_char,
) -> HfStatus {
    match borrow(handle) {
        Ok(s) => write_string(out, s.to_string()),
        Err(st) => st,
    }
}

#[no_mangle]
pub unsafe extern "C" fn hf_series_depth(handle: *const HfSeries, out: *mut usize) -> HfStatus {
    match borrow(handle) {
        Ok(s) => {
            if out.is_null() {
                set_error("null output pointer".into());
                return HfStatus::NullPointer;
            }
            *out = s.depth();
            HfStatus::Ok
        }
        Err(st) => st,
    }
}

unsafe fn binary_op(
    a: *const HfSeries,
    b: *const HfSeries,
    out: *mut *mut HfSeries,
    op: impl Fn(&Series, &Series) -> hahnfield::Result<Series>,
) -> HfStatus {
    let (a, b) = match (borrow(a), borrow(b)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(st), _) | (_, Err(st)) => return st,
    };
    match op(a, b) {
        Ok(s) => write_series(out, s),
        Err(e) => fail(e),
    }
}

/// Sum; the result precision is the finer inputs' minimum.
#[no_mangle]
pub unsafe extern "C" fn hf_series_add(
    a: *const HfSeries,
    b: *const HfSeries,
    out: *mut *mut HfSeries,
) -> HfStatus {
    binary_op(a, b, out, |a, b| a.add(b))
}

/// Difference.
#[no_mangle]
pub unsafe extern "C" fn hf_series_sub(
    a: *const HfSeries,
    b: *const HfSeries,
    out: *mut *mut HfSeries,
) -> HfStatus {
    binary_op(a, b, out, |a, b| a.sub(b))
}

/// Cauchy product with precision propagation.
#[no_mangle]
pub unsafe extern "C" fn hf_series_mul(
    a: *const HfSeries,
    b: *const HfSeries,
    out: *mut *mut HfSeries,
) -> HfStatus {
    binary_op(a, b, out, |a, b| a.mul(b))
}

/// Multiplicative inverse. `target` (a `t^...` exponent) bounds the result
/// when the input is exact with several terms; it may be null otherwise.
#[no_mangle]
pub unsafe extern "C" fn hf_series_invert(
    a: *const HfSeries,
    target: *const c_char,
    out: *mut *mut HfSeries,
) -> HfStatus {
    let a = match borrow(a) {
        Ok(a) => a,
        Err(st) => return st,
    };
    let target = if target.is_null() {
        None
    } else {
        match read_str(target).map(parse_exponent) {
            Ok(Ok(p)) => Some(p),
            Ok(Err(e)) => return fail(e),
            Err(st) => return st,
        }
    };
    match a.invert(target.as_ref()) {
        Ok(s) => write_series(out, s),
        Err(e) => fail(e),
    }
}

/// Valuation as text: an exponent vector, or "inf" for the exact zero.
#[no_mangle]
pub unsafe extern "C" fn hf_series_val(
    handle: *const HfSeries,
    out: *mut *mut c_char,
) -> HfStatus {
    match borrow(handle) {
        Ok(s) => match valuation::val(s) {
            Ok(v) => write_string(out, v.to_string()),
            Err(e) => fail(e),
        },
        Err(st) => st,
    }
}

/// Residue at a convex-subgroup level, as a new handle of smaller depth.
#[no_mangle]
pub unsafe extern "C" fn hf_series_residue(
    handle: *const HfSeries,
    level: usize,
    out: *mut *mut HfSeries,
) -> HfStatus {
    match borrow(handle) {
        Ok(s) => match valuation::residue(s, ConvexLevel(level)) {
            Ok(r) => write_series(out, r),
            Err(e) => fail(e),
        },
        Err(st) => st,
    }
}

/// Floor into the canonical integer part.
#[no_mangle]
pub unsafe extern "C" fn hf_series_floor(
    handle: *const HfSeries,
    out: *mut *mut HfSeries,
) -> HfStatus {
    match borrow(handle) {
        Ok(s) => match order::floor(s) {
            Ok(f) => write_series(out, f.to_series()),
            Err(e) => fail(e),
        },
        Err(st) => st,
    }
}

/// Ordering comparison: writes -1, 0 or 1.
#[no_mangle]
pub unsafe extern "C" fn hf_series_compare(
    a: *const HfSeries,
    b: *const HfSeries,
    out: *mut c_int,
) -> HfStatus {
    let (a, b) = match (borrow(a), borrow(b)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(st), _) | (_, Err(st)) => return st,
    };
    match order::compare(a, b) {
        Ok(ord) => {
            if out.is_null() {
                set_error("null output pointer".into());
                return HfStatus::NullPointer;
            }
            *out = match ord {
                std::cmp::Ordering::Less => -1,
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => 1,
            };
            HfStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// q-th root of a 1-unit, to the `t^...` target precision.
#[no_mangle]
pub unsafe extern "C" fn hf_series_unit_root(
    handle: *const HfSeries,
    q: u32,
    target: *const c_char,
    out: *mut *mut HfSeries,
) -> HfStatus {
    let s = match borrow(handle) {
        Ok(s) => s,
        Err(st) => return st,
    };
    let target = match read_str(target).map(parse_exponent) {
        Ok(Ok(p)) => p,
        Ok(Err(e)) => return fail(e),
        Err(st) => return st,
    };
    match hahnfield::hensel::unit_root(s, q, &target) {
        Ok(r) => write_series(out, r),
        Err(e) => fail(e),
    }
}

/// Runs a named scenario and returns the JSON report. Names:
/// "psf-integer-part", "chain-counterexample", "quotient-field", "embdsrf".
#[no_mangle]
pub unsafe extern "C" fn hf_scenario_json(
    name: *const c_char,
    depth: usize,
    n_max: usize,
    samples: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> HfStatus {
    let name = match read_str(name) {
        Ok(s) => s,
        Err(st) => return st,
    };
    let report = match name {
        "psf-integer-part" => Ok(scenario::psf_integer_part(n_max.max(1), samples, seed)),
        "chain-counterexample" => scenario::chain_counterexample(depth.max(2), samples, seed),
        "quotient-field" => scenario::quotient_field(depth.max(2), samples, seed),
        "embdsrf" => scenario::embdsrf(depth.max(2), samples, seed),
        other => {
            set_error(format!("unknown scenario {other:?}"));
            return HfStatus::DomainError;
        }
    };
    match report {
        Ok(r) => write_string(out, r.to_json()),
        Err(e) => fail(e),
    }
}
