//! C ABI over `semilocal`.
//!
//! Algebras live behind the opaque [`SlVoa`] handle. Every fallible call
//! returns an [`SlStatus`]; on failure, [`sl_last_error`] describes the cause
//! for the calling thread. Strings handed out by the library are released with
//! [`sl_string_free`], handles with [`sl_voa_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use semilocal::axioms::verify_axioms;
use semilocal::classify::{classify, Status};
use semilocal::cli::{self, build_named};
use semilocal::format::{parse_voa, serialize_voa};
use semilocal::linalg::parse_scalar;
use semilocal::voa::TruncatedVoa;
use semilocal::Error;

/// Opaque handle to a truncated vertex operator algebra.
pub struct SlVoa {
    inner: TruncatedVoa,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Bad arguments or an algebra that does not meet a precondition.
    Input = 3,
    /// Malformed `.voa` text.
    Syntax = 4,
    /// An axiom or structural identity failed.
    Violation = 5,
    /// A verdict relied on sampling and did not settle.
    Inconclusive = 6,
    /// The request is outside what the library handles.
    Unsupported = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SlAxiomTally {
    pub exact: usize,
    pub skipped: usize,
    pub failed: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SlClassification {
    pub block_count: usize,
    pub semilocal: bool,
    /// 1 local, 0 not local, -1 undecided.
    pub local: i32,
    pub four_way_agreement: bool,
    pub caveat_count: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> SlStatus {
    match e {
        Error::Syntax { .. } | Error::Semantic { .. } => SlStatus::Syntax,
        Error::Integrity(_) | Error::AxiomViolation(_) | Error::TheoremViolation(_) => SlStatus::Violation,
        Error::Refused(_) | Error::UnsplittableOverRationals { .. } => SlStatus::Unsupported,
        Error::Input(_) | Error::DimensionMismatch { .. } | Error::Precondition(_) => SlStatus::Input,
    }
}

struct Failure(SlStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<SlStatus, Failure>) -> SlStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Failure(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            SlStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(SlStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SlStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn voa_arg<'a>(v: *const SlVoa) -> Result<&'a TruncatedVoa, Failure> {
    v.as_ref()
        .map(|h| &h.inner)
        .ok_or(Failure(SlStatus::NullPointer, "handle is null".into()))
}

fn out_arg<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    // SAFETY: callers pass either null or a valid, writable pointer.
    unsafe { p.as_mut() }.ok_or(Failure(SlStatus::NullPointer, "output pointer is null".into()))
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(SlStatus::Input, "text contains a NUL byte".into()))
}

fn boxed(v: TruncatedVoa) -> *mut SlVoa {
    Box::into_raw(Box::new(SlVoa { inner: v }))
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn sl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses `.voa` text into a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_voa_parse(text: *const c_char, out: *mut *mut SlVoa) -> SlStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = ptr::null_mut();
        let v = parse_voa(str_arg(text, "text")?)?;
        *out = boxed(v);
        Ok(SlStatus::Ok)
    })
}

/// Builds a stock algebra by name, as the `build` subcommand does. `charge`
/// may be null, meaning `1/2`.
///
/// # Safety
/// `name` and a non-null `charge` must be NUL-terminated strings; `out` must
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_voa_build(
    name: *const c_char,
    level: i32,
    charge: *const c_char,
    out: *mut *mut SlVoa,
) -> SlStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = ptr::null_mut();
        let name = str_arg(name, "name")?;
        let charge = if charge.is_null() {
            "1/2"
        } else {
            str_arg(charge, "charge")?
        };
        let c = parse_scalar(charge).ok_or(Failure(SlStatus::Input, format!("invalid charge '{charge}'")))?;
        *out = boxed(build_named(name, level, &c)?);
        Ok(SlStatus::Ok)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `v` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sl_voa_free(v: *mut SlVoa) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Canonical `.voa` text; release with [`sl_string_free`].
///
/// # Safety
/// `v` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_voa_serialize(v: *const SlVoa, out: *mut *mut c_char) -> SlStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = ptr::null_mut();
        *out = into_c_string(serialize_voa(voa_arg(v)?))?;
        Ok(SlStatus::Ok)
    })
}

/// The weight window `[n_min, n_max]`.
///
/// # Safety
/// `v` must be a live handle; `n_min` and `n_max` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_voa_window(v: *const SlVoa, n_min: *mut i32, n_max: *mut i32) -> SlStatus {
    guard(|| {
        let v = voa_arg(v)?;
        *out_arg(n_min)? = v.n_min();
        *out_arg(n_max)? = v.n_max();
        Ok(SlStatus::Ok)
    })
}

/// `dim V_weight`, zero outside the window.
///
/// # Safety
/// `v` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_voa_dim(v: *const SlVoa, weight: i32, out: *mut usize) -> SlStatus {
    guard(|| {
        *out_arg(out)? = voa_arg(v)?.layout().dim(weight);
        Ok(SlStatus::Ok)
    })
}

/// Runs the axiom verifier. Returns `SL_STATUS_VIOLATION` when an instance
/// fails; the tally is filled in either way.
///
/// # Safety
/// `v` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_voa_check(v: *const SlVoa, out: *mut SlAxiomTally) -> SlStatus {
    guard(|| {
        let out = out_arg(out)?;
        let r = verify_axioms(voa_arg(v)?);
        let t = r.total();
        *out = SlAxiomTally {
            exact: t.exact,
            skipped: t.skipped,
            failed: t.failed,
        };
        match r.failures.first() {
            None => Ok(SlStatus::Ok),
            Some(f) => Err(Failure(SlStatus::Violation, f.to_string())),
        }
    })
}

/// Classifies the blocks of `v`. Returns `SL_STATUS_INCONCLUSIVE` when a
/// sampled verdict did not settle.
///
/// # Safety
/// `v` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_voa_classify(
    v: *const SlVoa,
    seed: u64,
    samples: usize,
    out: *mut SlClassification,
) -> SlStatus {
    guard(|| {
        let out = out_arg(out)?;
        let r = classify(voa_arg(v)?, samples, seed)?;
        *out = SlClassification {
            block_count: r.block_count,
            semilocal: r.semilocal,
            local: r.local.map_or(-1, i32::from),
            four_way_agreement: r.four_way_agreement,
            caveat_count: r.caveats.len(),
        };
        match r.status {
            Status::Ok => Ok(SlStatus::Ok),
            Status::Inconclusive => Err(Failure(SlStatus::Inconclusive, r.caveats.join("; "))),
        }
    })
}

/// The machine-readable report of a CLI subcommand (`check`, `center`,
/// `blocks`, `radicals` or `classify`) on `v`; release with [`sl_string_free`].
///
/// # Safety
/// `v` must be a live handle; `command` a NUL-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_voa_report(
    v: *const SlVoa,
    command: *const c_char,
    seed: u64,
    samples: usize,
    out: *mut *mut c_char,
) -> SlStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = ptr::null_mut();
        let v = voa_arg(v)?;
        let command = str_arg(command, "command")?;
        if !["check", "center", "blocks", "radicals", "classify"].contains(&command) {
            return Err(Failure(SlStatus::Input, format!("unknown report '{command}'")));
        }
        let text = serialize_voa(v);
        let (seed, samples) = (seed.to_string(), samples.to_string());
        let args = [
            "semilocal",
            "--machine",
            "--seed",
            &seed,
            "--samples",
            &samples,
            command,
        ];
        let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
        let code = cli::run(args, &mut text.as_bytes(), &mut stdout, &mut stderr);
        let status = match code {
            cli::EXIT_OK => SlStatus::Ok,
            cli::EXIT_VIOLATION => SlStatus::Violation,
            cli::EXIT_INCONCLUSIVE => SlStatus::Inconclusive,
            _ => SlStatus::Input,
        };
        if !stdout.is_empty() {
            *out = into_c_string(String::from_utf8_lossy(&stdout).into_owned())?;
        }
        if status != SlStatus::Ok && !stderr.is_empty() {
            return Err(Failure(status, String::from_utf8_lossy(&stderr).trim().to_string()));
        }
        Ok(status)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
