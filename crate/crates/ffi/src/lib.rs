//! C interface to `pascal-invariants`.
//!
//! Sequences and operators cross the boundary as opaque handles owned by
//! the caller and released with the matching `*_free`. Functions return a
//! [`PinvStatus`]; on failure [`pinv_last_error`] describes the cause for the
//! calling thread. Strings handed out by the library are released with
//! [`pinv_string_free`]. Panics never unwind into C.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pascal_invariants::cli::named_matrix;
use pascal_invariants::operators::truncate;
use pascal_invariants::parse::{parse_pipeline, parse_scalar, parse_seq};
use pascal_invariants::sequences::check_invariance;
use pascal_invariants::verify::{run_suite, Suite, VerifyConfig};
use pascal_invariants::{Error, Kind, Seq, Summation, TriOp, Verdict};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PinvStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Arithmetic = 5,
    Summation = 6,
    Unsupported = 7,
    Network = 8,
    Io = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PinvKind {
    First = 0,
    Second = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PinvSummation {
    Classical = 0,
    Continued = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PinvVerdict {
    Invariant = 0,
    InverseInvariant = 1,
    Neither = 2,
}

/// Opaque sequence handle.
pub struct PinvSeq(Seq);

/// Opaque operator handle.
pub struct PinvOperator(TriOp);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> PinvStatus {
    match e {
        Error::Parse(_) | Error::UnknownOperator(_) => PinvStatus::Parse,
        Error::DivisionByZero | Error::FieldMismatch { .. } | Error::InvalidDiscriminant(_) | Error::Incomparable => {
            PinvStatus::Arithmetic
        }
        Error::DivergentSum { .. } | Error::PoleError { .. } | Error::InfiniteSum { .. } | Error::UnboundedUpper(_) => {
            PinvStatus::Summation
        }
        Error::UnsupportedSequenceClass { .. } | Error::UnsupportedPair(_) | Error::NonIntegerSequence { .. } => {
            PinvStatus::Unsupported
        }
        Error::Network(_) | Error::CacheMiss(_) => PinvStatus::Network,
        Error::Io(_) => PinvStatus::Io,
        _ => PinvStatus::InvalidArgument,
    }
}

struct Fail(PinvStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, recording any error or panic for [`pinv_last_error`].
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PinvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PinvStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            PinvStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(PinvStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(PinvStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(PinvStatus::NullArgument, format!("{what} is null")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(PinvStatus::NullArgument, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

fn c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s).map(CString::into_raw).map_err(|_| Fail(PinvStatus::Io, "string contains a NUL byte".into()))
}

fn json(value: &impl serde::Serialize) -> Result<String, Fail> {
    serde_json::to_string(value).map_err(|e| Fail(PinvStatus::Io, e.to_string()))
}

fn summation(mode: PinvSummation) -> Summation {
    match mode {
        PinvSummation::Classical => Summation::Classical,
        PinvSummation::Continued => Summation::Continued,
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pinv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn pinv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pinv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a sequence literal such as `lucas`, `finsupp:[1,0,-2/3]` or
/// `geom:(1,1/2)`.
///
/// # Safety
/// `literal` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pinv_seq_parse(literal: *const c_char, out: *mut *mut PinvSeq) -> PinvStatus {
    guard(|| {
        let seq = parse_seq(text(literal, "literal")?)?;
        write_out(out, Box::into_raw(Box::new(PinvSeq(seq))))
    })
}

/// # Safety
/// `seq` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pinv_seq_free(seq: *mut PinvSeq) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// Term `n` as an exact literal (`p/q` or `a+b√d`).
///
/// # Safety
/// `seq` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pinv_seq_term(seq: *const PinvSeq, n: usize, out: *mut *mut c_char) -> PinvStatus {
    guard(|| {
        let s = handle(seq, "seq")?;
        write_out(out, c_string(s.0.term(n).to_string())?)
    })
}

/// The first `depth` terms as a JSON array of exact scalars.
///
/// # Safety
/// `seq` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pinv_seq_prefix_json(seq: *const PinvSeq, depth: usize, out: *mut *mut c_char) -> PinvStatus {
    guard(|| {
        let s = handle(seq, "seq")?;
        write_out(out, c_string(json(&s.0.prefix(depth))?)?)
    })
}

/// Classifies a sequence on its first `depth` terms.
///
/// # Safety
/// `seq` must be a live handle; `verdict` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pinv_check_invariance(
    seq: *const PinvSeq,
    kind: PinvKind,
    depth: usize,
    mode: PinvSummation,
    verdict: *mut PinvVerdict,
) -> PinvStatus {
    guard(|| {
        let s = handle(seq, "seq")?;
        let kind = match kind {
            PinvKind::First => Kind::First,
            PinvKind::Second => Kind::Second,
        };
        let report = check_invariance(&s.0, kind, depth, summation(mode))?;
        let v = match report.verdict {
            Verdict::Invariant => PinvVerdict::Invariant,
            Verdict::InverseInvariant => PinvVerdict::InverseInvariant,
            Verdict::Neither => PinvVerdict::Neither,
        };
        write_out(verdict, v)
    })
}

/// Applies a pipeline such as `t42c` or `phi(2);t42a` and returns a new
/// sequence handle.
///
/// # Safety
/// `pipeline` must be a NUL-terminated string, `seq` a live handle and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn pinv_apply_pipeline(
    pipeline: *const c_char,
    seq: *const PinvSeq,
    mode: PinvSummation,
    out: *mut *mut PinvSeq,
) -> PinvStatus {
    guard(|| {
        let p = parse_pipeline(text(pipeline, "pipeline")?)?;
        let s = handle(seq, "seq")?;
        let y = p.apply(&s.0, summation(mode))?;
        write_out(out, Box::into_raw(Box::new(PinvSeq(y))))
    })
}

/// Builds a named operator (`P`, `PT`, `D`, `J`, `Jinv`, `N`, `M`,
/// `PTdown`, ...). `param` is null for operators without a parameter.
///
/// # Safety
/// `name` must be a NUL-terminated string, `param` null or one, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn pinv_operator_new(
    name: *const c_char,
    param: *const c_char,
    out: *mut *mut PinvOperator,
) -> PinvStatus {
    guard(|| {
        let name = text(name, "name")?;
        let param = if param.is_null() { None } else { Some(parse_scalar(text(param, "param")?)?) };
        let op = named_matrix(name, param)?;
        write_out(out, Box::into_raw(Box::new(PinvOperator(op))))
    })
}

/// # Safety
/// `op` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pinv_operator_free(op: *mut PinvOperator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// Entry `(i, j)` as an exact literal.
///
/// # Safety
/// `op` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pinv_operator_entry(
    op: *const PinvOperator,
    i: usize,
    j: usize,
    out: *mut *mut c_char,
) -> PinvStatus {
    guard(|| {
        let o = handle(op, "op")?;
        write_out(out, c_string(o.0.entry(i, j).to_string())?)
    })
}

/// The leading `rows x cols` block as JSON.
///
/// # Safety
/// `op` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pinv_operator_truncate_json(
    op: *const PinvOperator,
    rows: usize,
    cols: usize,
    out: *mut *mut c_char,
) -> PinvStatus {
    guard(|| {
        let o = handle(op, "op")?;
        write_out(out, c_string(json(&truncate(&o.0, rows, cols)?)?)?)
    })
}

/// Runs a verification suite (`inversion`, `eigen`, `similarity`,
/// `transforms`, `all`). `passed` receives the overall outcome; `report`,
/// when not null, receives the JSON report.
///
/// # Safety
/// `suite` must be a NUL-terminated string; `passed` writable; `report` null
/// or writable.
#[no_mangle]
pub unsafe extern "C" fn pinv_verify(
    suite: *const c_char,
    depth: usize,
    seed: u64,
    passed: *mut bool,
    report: *mut *mut c_char,
) -> PinvStatus {
    guard(|| {
        let suite: Suite = text(suite, "suite")?.parse()?;
        let config = VerifyConfig { depth, seed, timings: false };
        let r = run_suite(suite, &config)?;
        write_out(passed, r.passed)?;
        if !report.is_null() {
            report.write(c_string(json(&r)?)?);
        }
        Ok(())
    })
}
