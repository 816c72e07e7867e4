//! C ABI for `gecs`.
//!
//! Library objects cross the boundary as opaque heap handles that the
//! caller releases with the matching `*_free` function. Fallible calls
//! return a [`GecsStatus`] and write their result through an out-pointer;
//! on failure a message is available from [`gecs_last_error_message`] until
//! the next failing call on the same thread.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use gecs::decoder::{self, CheckCollection, Code, ReceivedWord};
use gecs::gensets::{self, GenericSet};
use gecs::verifier::{self, VerificationReport, VerifyOptions};
use gecs::{BitMatrix, Error};

/// Result codes shared by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GecsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    DimensionMismatch = 4,
    Singular = 5,
    RankDeficient = 6,
    NotFound = 7,
    InvalidUtf8 = 8,
}

/// A generic erasure correcting set.
pub struct GecsSet(GenericSet);

/// A binary linear code given by a full-rank parity-check matrix.
pub struct GecsCode(Code);

/// A collection of parity checks.
pub struct GecsChecks(CheckCollection);

/// The outcome of a certification run.
pub struct GecsReport(VerificationReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn fail(status: GecsStatus, msg: impl Into<String>) -> GecsStatus {
    set_last_error(msg.into());
    status
}

fn from_error(e: Error) -> GecsStatus {
    let status = match e {
        Error::DimensionMismatch { .. } => GecsStatus::DimensionMismatch,
        Error::Singular => GecsStatus::Singular,
        Error::RankDeficient { .. } => GecsStatus::RankDeficient,
        Error::Usage(_) => GecsStatus::InvalidArgument,
        Error::Parse { .. } => GecsStatus::Parse,
    };
    fail(status, e.to_string())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, GecsStatus> {
    if s.is_null() {
        return Err(fail(GecsStatus::NullPointer, "string argument is NULL"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(GecsStatus::InvalidUtf8, "string argument is not UTF-8"))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> GecsStatus {
    *out = Box::into_raw(Box::new(value));
    GecsStatus::Ok
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(GecsStatus::NullPointer, concat!(stringify!($p), " is NULL"));
        })+
    };
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return from_error(e),
        }
    };
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn gecs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn gecs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---------------------------------------------------------------------------
// Sets

#[no_mangle]
pub unsafe extern "C" fn gecs_set_arm(r: usize, m: usize, out: *mut *mut GecsSet) -> GecsStatus {
    non_null!(out);
    write_out(out, GecsSet(tri!(gensets::construct_arm(r, m))))
}

#[no_mangle]
pub unsafe extern "C" fn gecs_set_weber(r: usize, out: *mut *mut GecsSet) -> GecsStatus {
    non_null!(out);
    write_out(out, GecsSet(tri!(gensets::construct_weber(r))))
}

/// Parses the line-oriented set format. `r = 0` infers the dimension from
/// the first line.
#[no_mangle]
pub unsafe extern "C" fn gecs_set_parse(
    text: *const c_char,
    r: usize,
    out: *mut *mut GecsSet,
) -> GecsStatus {
    non_null!(out);
    let text = match read_str(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let r = (r != 0).then_some(r);
    write_out(out, GecsSet(tri!(GenericSet::parse(text, r))))
}

/// Maps every member `a` to `aT`, where `text` holds the rows of an
/// invertible `r × r` matrix `T`.
#[no_mangle]
pub unsafe extern "C" fn gecs_set_transform(
    set: *const GecsSet,
    text: *const c_char,
    out: *mut *mut GecsSet,
) -> GecsStatus {
    non_null!(set, out);
    let text = match read_str(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let transform: BitMatrix = tri!(text.parse());
    write_out(out, GecsSet(tri!(gensets::apply_transform(&(*set).0, &transform))))
}

#[no_mangle]
pub unsafe extern "C" fn gecs_set_len(set: *const GecsSet) -> usize {
    set.as_ref().map_or(0, |s| s.0.len())
}

#[no_mangle]
pub unsafe extern "C" fn gecs_set_dimension(set: *const GecsSet) -> usize {
    set.as_ref().map_or(0, |s| s.0.r())
}

/// The set in its line-oriented format; free with [`gecs_string_free`].
#[no_mangle]
pub unsafe extern "C" fn gecs_set_to_text(set: *const GecsSet) -> *mut c_char {
    set.as_ref()
        .map_or(ptr::null_mut(), |s| into_c_string(s.0.to_text()))
}

#[no_mangle]
pub unsafe extern "C" fn gecs_set_free(set: *mut GecsSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

// ---------------------------------------------------------------------------
// Verification and search

/// Certifies `set` against every rank-`m` matrix. `jobs <= 1` runs
/// serially.
#[no_mangle]
pub unsafe extern "C" fn gecs_verify(
    set: *const GecsSet,
    m: usize,
    jobs: usize,
    fail_fast: bool,
    out: *mut *mut GecsReport,
) -> GecsStatus {
    non_null!(set, out);
    let set = &(*set).0;
    let report = tri!(verifier::verify_generic_with(
        set,
        set.r(),
        m,
        VerifyOptions { jobs, fail_fast }
    ));
    write_out(out, GecsReport(report))
}

#[no_mangle]
pub unsafe extern "C" fn gecs_report_passed(report: *const GecsReport) -> bool {
    report.as_ref().is_some_and(|r| r.0.passed())
}

#[no_mangle]
pub unsafe extern "C" fn gecs_report_matrices_checked(report: *const GecsReport) -> u64 {
    report.as_ref().map_or(0, |r| r.0.matrices_checked)
}

/// The report in its line-oriented format; free with [`gecs_string_free`].
#[no_mangle]
pub unsafe extern "C" fn gecs_report_to_text(report: *const GecsReport) -> *mut c_char {
    report
        .as_ref()
        .map_or(ptr::null_mut(), |r| into_c_string(r.0.to_text()))
}

#[no_mangle]
pub unsafe extern "C" fn gecs_report_free(report: *mut GecsReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Random search with `n` draws per attempt. Returns `NOT_FOUND` and
/// writes NULL when every attempt fails.
#[no_mangle]
pub unsafe extern "C" fn gecs_random_search(
    r: usize,
    m: usize,
    n: usize,
    seed: u64,
    max_restarts: usize,
    out: *mut *mut GecsSet,
) -> GecsStatus {
    non_null!(out);
    let outcome = tri!(verifier::random_search(r, m, n, seed, max_restarts));
    match outcome.found {
        Some(set) => write_out(out, GecsSet(set)),
        None => {
            *out = ptr::null_mut();
            fail(
                GecsStatus::NotFound,
                format!("no generic set found in {} attempts", outcome.restarts_used),
            )
        }
    }
}

#[no_mangle]
pub unsafe extern "C" fn gecs_size_formula(r: usize, m: usize, out: *mut u64) -> GecsStatus {
    non_null!(out);
    let size = tri!(gensets::size_formula(r, m));
    match u64::try_from(size) {
        Ok(v) => {
            *out = v;
            GecsStatus::Ok
        }
        Err(_) => fail(GecsStatus::InvalidArgument, "size does not fit in 64 bits"),
    }
}

#[no_mangle]
pub unsafe extern "C" fn gecs_upper_bound(
    r: usize,
    m: usize,
    coefficient: *mut f64,
    bound: *mut u64,
) -> GecsStatus {
    non_null!(coefficient, bound);
    let (c, b) = tri!(gensets::upper_bound(r, m));
    *coefficient = c;
    *bound = b;
    GecsStatus::Ok
}

#[no_mangle]
pub unsafe extern "C" fn gecs_required_size_bound(
    r: usize,
    m: usize,
    exact_count: bool,
    out: *mut u64,
) -> GecsStatus {
    non_null!(out);
    *out = tri!(verifier::required_size_bound(r, m, exact_count));
    GecsStatus::Ok
}

// ---------------------------------------------------------------------------
// Codes, checks and decoding

/// Parses a parity-check matrix, one row per line. Fails with
/// `RANK_DEFICIENT` if the rows are dependent.
#[no_mangle]
pub unsafe extern "C" fn gecs_code_parse(text: *const c_char, out: *mut *mut GecsCode) -> GecsStatus {
    non_null!(out);
    let text = match read_str(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let pcm: BitMatrix = tri!(text.parse());
    write_out(out, GecsCode(tri!(Code::new(pcm))))
}

#[no_mangle]
pub unsafe extern "C" fn gecs_code_hamming(r: usize, out: *mut *mut GecsCode) -> GecsStatus {
    non_null!(out);
    write_out(out, GecsCode(tri!(Code::hamming(r))))
}

#[no_mangle]
pub unsafe extern "C" fn gecs_code_length(code: *const GecsCode) -> usize {
    code.as_ref().map_or(0, |c| c.0.n())
}

#[no_mangle]
pub unsafe extern "C" fn gecs_code_codimension(code: *const GecsCode) -> usize {
    code.as_ref().map_or(0, |c| c.0.r())
}

#[no_mangle]
pub unsafe extern "C" fn gecs_code_free(code: *mut GecsCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// `{aH : a ∈ set}` for the code's parity-check matrix `H`.
#[no_mangle]
pub unsafe extern "C" fn gecs_checks_generate(
    set: *const GecsSet,
    code: *const GecsCode,
    out: *mut *mut GecsChecks,
) -> GecsStatus {
    non_null!(set, code, out);
    write_out(
        out,
        GecsChecks(tri!(decoder::generate_checks(&(*set).0, &(*code).0))),
    )
}

#[no_mangle]
pub unsafe extern "C" fn gecs_checks_parse(
    text: *const c_char,
    out: *mut *mut GecsChecks,
) -> GecsStatus {
    non_null!(out);
    let text = match read_str(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    write_out(out, GecsChecks(tri!(CheckCollection::parse(text))))
}

#[no_mangle]
pub unsafe extern "C" fn gecs_checks_len(checks: *const GecsChecks) -> usize {
    checks.as_ref().map_or(0, |c| c.0.len())
}

#[no_mangle]
pub unsafe extern "C" fn gecs_checks_to_text(checks: *const GecsChecks) -> *mut c_char {
    checks
        .as_ref()
        .map_or(ptr::null_mut(), |c| into_c_string(c.0.to_text()))
}

#[no_mangle]
pub unsafe extern "C" fn gecs_checks_free(checks: *mut GecsChecks) {
    if !checks.is_null() {
        drop(Box::from_raw(checks));
    }
}

/// Peels the erasures (`'?'`) out of `word`. `decoded` receives whether
/// every erasure was resolved; `trace` (optional) receives the step-by-step
/// trace, to be freed with [`gecs_string_free`].
#[no_mangle]
pub unsafe extern "C" fn gecs_peel_decode(
    checks: *const GecsChecks,
    word: *const c_char,
    decoded: *mut bool,
    trace: *mut *mut c_char,
) -> GecsStatus {
    non_null!(checks, decoded);
    let word = match read_str(word) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let word: ReceivedWord = tri!(word.parse());
    let result = tri!(decoder::peel_decode(&(*checks).0, &word));
    *decoded = result.decoded().is_some();
    if !trace.is_null() {
        *trace = into_c_string(result.to_string());
    }
    GecsStatus::Ok
}

/// Whether every correctable erasure pattern of size at most `m` is
/// resolved by peeling with `checks` on `code`.
#[no_mangle]
pub unsafe extern "C" fn gecs_is_m_erasure_decoding(
    checks: *const GecsChecks,
    code: *const GecsCode,
    m: usize,
    out: *mut bool,
) -> GecsStatus {
    non_null!(checks, code, out);
    *out = tri!(decoder::is_m_erasure_decoding(&(*checks).0, &(*code).0, m));
    GecsStatus::Ok
}
