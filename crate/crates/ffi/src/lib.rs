//! C ABI for `kirby-core`.
//!
//! Every function returns a [`KirbyStatus`]; results come back through out
//! pointers. Presentations, verification reports and certificates are opaque
//! handles owned by the caller and released with the matching `*_free`.
//! Strings handed out by this library are released with [`kirby_string_free`].
//! After a non-OK status, [`kirby_last_error`] describes the failure on the
//! calling thread.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use kirby_core::family::{self, FamilyCertificate, FamilyParams};
use kirby_core::homology::{determinant, first_homology};
use kirby_core::twobridge::{is_hyperbolic, normalize};
use kirby_core::{verify_script, Error, MoveScript, SurgeryPresentation, VerificationReport};

pub const KIRBY_ABI_VERSION: u32 = 1;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KirbyStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    BufferTooSmall = 5,
    Overflow = 6,
    Panic = 7,
}

/// Opaque surgery presentation.
pub struct KirbyPresentation(SurgeryPresentation);

/// Opaque result of replaying a move script.
pub struct KirbyReport(VerificationReport);

/// Opaque family certificate.
pub struct KirbyCertificate(FamilyCertificate);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("interior NULs removed"));
}

struct Fail(KirbyStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Overflow(_) => KirbyStatus::Overflow,
            _ => KirbyStatus::InvalidInput,
        };
        Fail(status, e.to_string())
    }
}

impl From<serde_json::Error> for Fail {
    fn from(e: serde_json::Error) -> Self {
        Fail(KirbyStatus::ParseError, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(KirbyStatus::NullPointer, format!("{what} is NULL"))
}

/// Runs `f`, turning errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> KirbyStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            KirbyStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            KirbyStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Fail(KirbyStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn handle<'a, T>(h: *const T, what: &str) -> Result<&'a T, Fail> {
    h.as_ref().ok_or_else(|| null(what))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no interior NUL").into_raw()
}

fn params(n: i64, k: i64) -> Result<FamilyParams, Fail> {
    Ok(FamilyParams::new(n, k)?)
}

#[no_mangle]
pub extern "C" fn kirby_abi_version() -> u32 {
    KIRBY_ABI_VERSION
}

/// Message for the most recent failure on this thread, or "" after success.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn kirby_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kirby_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kirby_presentation_from_json(
    json: *const c_char,
    out: *mut *mut KirbyPresentation,
) -> KirbyStatus {
    guard(|| {
        let s = read_str(json, "json")?;
        let p = SurgeryPresentation::from_json(s)?;
        write_out(out, Box::into_raw(Box::new(KirbyPresentation(p))), "out")
    })
}

/// Base (`final_stage = false`) or final presentation of the family link.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kirby_family_presentation(
    n: i64,
    k: i64,
    final_stage: bool,
    out: *mut *mut KirbyPresentation,
) -> KirbyStatus {
    guard(|| {
        let params = params(n, k)?;
        let p = if final_stage {
            family::final_presentation(params)?
        } else {
            family::base_presentation(params)
        };
        write_out(out, Box::into_raw(Box::new(KirbyPresentation(p))), "out")
    })
}

/// # Safety
/// `p` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kirby_presentation_free(p: *mut KirbyPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kirby_presentation_len(p: *const KirbyPresentation, out: *mut usize) -> KirbyStatus {
    guard(|| write_out(out, handle(p, "presentation")?.0.len(), "out"))
}

/// # Safety
/// `p` must be a live handle; `out` must be writable. Free the result with
/// [`kirby_string_free`].
#[no_mangle]
pub unsafe extern "C" fn kirby_presentation_to_json(
    p: *const KirbyPresentation,
    out: *mut *mut c_char,
) -> KirbyStatus {
    guard(|| {
        let p = handle(p, "presentation")?;
        write_out(out, into_c_string(p.0.to_json()), "out")
    })
}

/// Invariant factors of H₁ (1s dropped, 0 for a free summand). `*len`
/// receives the number of factors; they are written to `factors` only when
/// `capacity` is large enough, otherwise the status is `BufferTooSmall`.
/// `factors` may be NULL when `capacity` is 0.
///
/// # Safety
/// `p` must be a live handle, `len` writable, and `factors` valid for
/// `capacity` writes.
#[no_mangle]
pub unsafe extern "C" fn kirby_first_homology(
    p: *const KirbyPresentation,
    factors: *mut i64,
    capacity: usize,
    len: *mut usize,
) -> KirbyStatus {
    guard(|| {
        let p = handle(p, "presentation")?;
        let h = first_homology(&p.0)?;
        let values = h
            .invariant_factors
            .iter()
            .map(|d| i64::try_from(d).map_err(|_| Fail(KirbyStatus::Overflow, format!("factor {d} exceeds 64 bits"))))
            .collect::<Result<Vec<_>, _>>()?;
        write_out(len, values.len(), "len")?;
        if values.len() > capacity {
            return Err(Fail(
                KirbyStatus::BufferTooSmall,
                format!("{} factors, capacity {capacity}", values.len()),
            ));
        }
        if !values.is_empty() {
            if factors.is_null() {
                return Err(null("factors"));
            }
            std::ptr::copy_nonoverlapping(values.as_ptr(), factors, values.len());
        }
        Ok(())
    })
}

/// Determinant of the framed linking matrix (integral presentations only).
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kirby_framed_determinant(p: *const KirbyPresentation, out: *mut i64) -> KirbyStatus {
    guard(|| {
        let p = handle(p, "presentation")?;
        let det = determinant(&p.0.framed_linking_matrix()?.to_int_matrix())?;
        let det = i64::try_from(&det).map_err(|_| Fail(KirbyStatus::Overflow, format!("determinant {det} exceeds 64 bits")))?;
        write_out(out, det, "out")
    })
}

/// Replays a move script given as JSON. A script that fails verification
/// still yields `Ok` and a report; check [`kirby_report_ok`].
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kirby_verify_script_json(json: *const c_char, out: *mut *mut KirbyReport) -> KirbyStatus {
    guard(|| {
        let script = MoveScript::from_json(read_str(json, "json")?)?;
        let report = verify_script(&script);
        write_out(out, Box::into_raw(Box::new(KirbyReport(report))), "out")
    })
}

/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kirby_report_ok(r: *const KirbyReport, out: *mut bool) -> KirbyStatus {
    guard(|| write_out(out, handle(r, "report")?.0.ok, "out"))
}

/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kirby_report_steps_checked(r: *const KirbyReport, out: *mut usize) -> KirbyStatus {
    guard(|| write_out(out, handle(r, "report")?.0.steps_checked, "out"))
}

/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kirby_report_retype_count(r: *const KirbyReport, out: *mut usize) -> KirbyStatus {
    guard(|| write_out(out, handle(r, "report")?.0.retype_steps.len(), "out"))
}

/// # Safety
/// `r` must be a live handle; `out` must be writable. Free the result with
/// [`kirby_string_free`].
#[no_mangle]
pub unsafe extern "C" fn kirby_report_to_json(r: *const KirbyReport, out: *mut *mut c_char) -> KirbyStatus {
    guard(|| write_out(out, into_c_string(handle(r, "report")?.0.to_json()), "out"))
}

/// # Safety
/// `r` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kirby_report_free(r: *mut KirbyReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kirby_certify(n: i64, k: i64, out: *mut *mut KirbyCertificate) -> KirbyStatus {
    guard(|| {
        let cert = family::certify(params(n, k)?)?;
        write_out(out, Box::into_raw(Box::new(KirbyCertificate(cert))), "out")
    })
}

/// Whether all four family properties were certified.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kirby_certificate_all_hold(c: *const KirbyCertificate, out: *mut bool) -> KirbyStatus {
    guard(|| write_out(out, handle(c, "certificate")?.0.properties.all_hold(), "out"))
}

/// # Safety
/// `c` must be a live handle; `out` must be writable. Free the result with
/// [`kirby_string_free`].
#[no_mangle]
pub unsafe extern "C" fn kirby_certificate_to_json(c: *const KirbyCertificate, out: *mut *mut c_char) -> KirbyStatus {
    guard(|| write_out(out, into_c_string(handle(c, "certificate")?.0.to_json()), "out"))
}

/// # Safety
/// `c` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kirby_certificate_free(c: *mut KirbyCertificate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Schubert normal form of `S(p, q)`.
///
/// # Safety
/// All out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn kirby_classify(
    p: i64,
    q: i64,
    p_out: *mut i64,
    q_canonical_out: *mut i64,
    hyperbolic_out: *mut bool,
) -> KirbyStatus {
    guard(|| {
        if p_out.is_null() || q_canonical_out.is_null() || hyperbolic_out.is_null() {
            return Err(null("out pointer"));
        }
        let c = normalize(p, q)?;
        write_out(p_out, c.p(), "p_out")?;
        write_out(q_canonical_out, c.q_canonical(), "q_canonical_out")?;
        write_out(hyperbolic_out, is_hyperbolic(&c), "hyperbolic_out")
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kirby_distinct_links(n_a: i64, k_a: i64, n_b: i64, k_b: i64, out: *mut bool) -> KirbyStatus {
    guard(|| {
        let d = family::distinct_links(params(n_a, k_a)?, params(n_b, k_b)?)?;
        write_out(out, d, "out")
    })
}
