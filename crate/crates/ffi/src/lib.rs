//! C ABI over `linkcheck`.
//!
//! Handles are opaque and owned by the caller: every `*_new` or computed
//! handle must be released with the matching `*_free`, and every returned
//! string with `lc_string_free`. Functions return an [`LcStatus`]; on failure
//! `lc_last_error` describes the error until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use linkcheck::cli::{parse_instance, Report};
use linkcheck::groebner::Ideal;
use linkcheck::homalg::grade_via_ext;
use linkcheck::ideal_ops::{ideal_equal, ideal_quotient, intersect_ideals};
use linkcheck::linkage::{cd_bounds, CyclicModule};
use linkcheck::poly::PolyRing;
use linkcheck::theorems::run_suite;
use linkcheck::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LcStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    RingMismatch = 4,
    ResourceLimit = 5,
    Precondition = 6,
    Math = 7,
    Io = 8,
    Panic = 9,
}

/// A polynomial ring.
pub struct LcRing {
    ring: PolyRing,
}

/// An ideal of an `LcRing`.
pub struct LcIdeal {
    ideal: Ideal,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> LcStatus {
    match e {
        Error::Syntax { .. } | Error::UnknownVariable { .. } | Error::InvalidRing(_) => LcStatus::Parse,
        Error::RingMismatch => LcStatus::RingMismatch,
        Error::ResourceLimit(_) => LcStatus::ResourceLimit,
        Error::Precondition(_)
        | Error::InvalidWitness(_)
        | Error::UnitIdeal
        | Error::ZeroIdeal
        | Error::GradeUndefined
        | Error::NotMonomial
        | Error::NotSquarefree
        | Error::NotHomogeneous => LcStatus::Precondition,
        Error::Io(_) => LcStatus::Io,
        _ => LcStatus::Math,
    }
}

enum Fail {
    Status(LcStatus, String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `f`, converting errors and panics into a status and `lc_last_error`.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> LcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LcStatus::Ok,
        Ok(Err(Fail::Status(s, msg))) => {
            set_error(msg);
            s
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            LcStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail::Status(LcStatus::NullArgument, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Status(LcStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

fn module_of(ring: &PolyRing, j: *const LcIdeal) -> Result<CyclicModule, Fail> {
    match unsafe { j.as_ref() } {
        None => Ok(CyclicModule::free(ring)),
        Some(j) => Ok(CyclicModule::new(j.ideal.clone())?),
    }
}

/// Message for the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn lc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn lc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn lc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a ring such as `QQ[x, y] grevlex` or `FP(7)[a, b] lex`.
///
/// # Safety
/// `spec` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lc_ring_new(spec: *const c_char, out: *mut *mut LcRing) -> LcStatus {
    guard(|| {
        let ring = PolyRing::parse_spec(text(spec, "spec")?)?;
        put(out, Box::into_raw(Box::new(LcRing { ring })), "out")
    })
}

/// # Safety
/// `ring` must come from `lc_ring_new` and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn lc_ring_free(ring: *mut LcRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Builds the ideal generated by a comma-separated polynomial list (`0` is the zero ideal).
///
/// # Safety
/// `ring` must be a live handle, `gens` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lc_ideal_new(
    ring: *const LcRing,
    gens: *const c_char,
    out: *mut *mut LcIdeal,
) -> LcStatus {
    guard(|| {
        let ring = handle(ring, "ring")?;
        let ideal = Ideal::parse(&ring.ring, text(gens, "gens")?)?;
        put(out, Box::into_raw(Box::new(LcIdeal { ideal })), "out")
    })
}

/// # Safety
/// `ideal` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn lc_ideal_free(ideal: *mut LcIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// Reduced Gröbner basis rendered as `(g1, g2, ...)`; free with `lc_string_free`.
///
/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lc_ideal_groebner(ideal: *const LcIdeal, out: *mut *mut c_char) -> LcStatus {
    guard(|| {
        let s = handle(ideal, "ideal")?.ideal.canonical()?;
        put(out, to_c(s), "out")
    })
}

/// `i : j`.
///
/// # Safety
/// `i`, `j` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lc_ideal_quotient(
    i: *const LcIdeal,
    j: *const LcIdeal,
    out: *mut *mut LcIdeal,
) -> LcStatus {
    guard(|| {
        let q = ideal_quotient(&handle(i, "i")?.ideal, &handle(j, "j")?.ideal)?;
        put(out, Box::into_raw(Box::new(LcIdeal { ideal: q })), "out")
    })
}

/// `i ∩ j`.
///
/// # Safety
/// `i`, `j` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lc_ideal_intersect(
    i: *const LcIdeal,
    j: *const LcIdeal,
    out: *mut *mut LcIdeal,
) -> LcStatus {
    guard(|| {
        let q = intersect_ideals(&handle(i, "i")?.ideal, &handle(j, "j")?.ideal)?;
        put(out, Box::into_raw(Box::new(LcIdeal { ideal: q })), "out")
    })
}

/// Ideal equality.
///
/// # Safety
/// `i`, `j` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lc_ideal_equal(i: *const LcIdeal, j: *const LcIdeal, out: *mut bool) -> LcStatus {
    guard(|| {
        let eq = ideal_equal(&handle(i, "i")?.ideal, &handle(j, "j")?.ideal)?;
        put(out, eq, "out")
    })
}

/// `grade_M a` for `M = R/j`; pass null `j` for `M = R`.
///
/// # Safety
/// `a` must be a live handle, `j` null or live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lc_ideal_grade(a: *const LcIdeal, j: *const LcIdeal, out: *mut usize) -> LcStatus {
    guard(|| {
        let a = &handle(a, "a")?.ideal;
        let g = grade_via_ext(a, &module_of(a.ring(), j)?)?;
        put(out, g, "out")
    })
}

/// Cohomological dimension `cd(a, R/j)` as bounds; `*lo == *hi` when exact.
///
/// # Safety
/// `a` must be a live handle, `j` null or live, `lo` and `hi` writable.
#[no_mangle]
pub unsafe extern "C" fn lc_ideal_cd(
    a: *const LcIdeal,
    j: *const LcIdeal,
    lo: *mut usize,
    hi: *mut usize,
) -> LcStatus {
    guard(|| {
        let a = &handle(a, "a")?.ideal;
        let rec = cd_bounds(a, &module_of(a.ring(), j)?)?;
        put(lo, rec.cd.lower(), "lo")?;
        put(hi, rec.cd.upper(), "hi")
    })
}

/// Runs an instance file and returns the JSON report and the CLI exit code
/// it corresponds to (0 all hold, 1 some fail, 3 resource limit).
///
/// # Safety
/// `path` must be nul-terminated; `json` and `exit_code` writable.
#[no_mangle]
pub unsafe extern "C" fn lc_run_file_json(
    path: *const c_char,
    jobs: usize,
    json: *mut *mut c_char,
    exit_code: *mut i32,
) -> LcStatus {
    guard(|| {
        let path = text(path, "path")?;
        let src = std::fs::read_to_string(path).map_err(Error::from)?;
        let file = parse_instance(&src)?;
        let report = Report::new(&file, run_suite(&file.to_suite()?, jobs.max(1)));
        if json.is_null() || exit_code.is_null() {
            return Err(null("output pointer"));
        }
        put(exit_code, report.exit_code(), "exit_code")?;
        put(json, to_c(report.to_json()), "json")
    })
}
