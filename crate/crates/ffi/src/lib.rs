//! C interface to `snp-core`.
//!
//! Objects cross the boundary as opaque handles released with the matching
//! `snp_*_free`. Every
//! fallible call returns an [`SnpStatus`]; on failure the message is
//! available from [`snp_last_error`] until the next call on the same thread.
//! Rationals travel as strings such as `"-3/4"`. Strings returned through
//! `char **` are owned by the caller and released with [`snp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use snp_core::exactalg::{IdentityMode, Rational};
use snp_core::extfields::{verify_pure_descent, verify_trinomial_descent, ExtFile, SimpleExt};
use snp_core::forms::{permits_composition_check, AnyForm, Form, FormFile};
use snp_core::report::VerifyReport;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SnpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Unsupported = 4,
    Arithmetic = 5,
    Panic = 6,
}

/// A simple extension `Q(alpha)` of the rationals.
pub struct SnpExtension {
    inner: SimpleExt<Rational>,
}

/// A form with rational coefficients.
pub struct SnpForm {
    inner: Form<Rational>,
}

/// The outcome of a verification.
pub struct SnpReport {
    inner: VerifyReport,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(SnpStatus, String);

impl Failure {
    fn parse(e: impl ToString) -> Self {
        Failure(SnpStatus::Parse, e.to_string())
    }

    fn math(e: impl ToString) -> Self {
        Failure(SnpStatus::Arithmetic, e.to_string())
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SnpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SnpStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SnpStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(SnpStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SnpStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or(Failure(SnpStatus::NullPointer, "null handle".into()))
}

unsafe fn rationals(values: *const *const c_char, len: usize) -> Result<Vec<Rational>, Failure> {
    if len == 0 {
        return Ok(Vec::new());
    }
    if values.is_null() {
        return Err(Failure(
            SnpStatus::NullPointer,
            "null coordinate array".into(),
        ));
    }
    std::slice::from_raw_parts(values, len)
        .iter()
        .map(|&s| text(s)?.trim().parse::<Rational>().map_err(Failure::parse))
        .collect()
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(
            SnpStatus::NullPointer,
            "null output pointer".into(),
        ));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(
            SnpStatus::NullPointer,
            "null output pointer".into(),
        ));
    }
    *out = CString::new(s).map_err(Failure::math)?.into_raw();
    Ok(())
}

unsafe fn put_report(out: *mut *mut SnpReport, r: VerifyReport) -> Result<(), Failure> {
    put(out, SnpReport { inner: r })
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn snp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn snp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse an extension file with rational base field.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn snp_extension_from_json(
    json: *const c_char,
    out: *mut *mut SnpExtension,
) -> SnpStatus {
    guard(|| {
        let file = ExtFile::parse(text(json)?).map_err(Failure::parse)?;
        let inner = file
            .to_rational_ext()
            .map_err(|e| Failure(SnpStatus::Unsupported, e.to_string()))?;
        put(out, SnpExtension { inner })
    })
}

/// # Safety
/// `ext` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn snp_extension_free(ext: *mut SnpExtension) {
    if !ext.is_null() {
        drop(Box::from_raw(ext));
    }
}

/// Degree of the extension, or 0 for a null handle.
///
/// # Safety
/// `ext` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn snp_extension_degree(ext: *const SnpExtension) -> usize {
    ext.as_ref().map_or(0, |e| e.inner.degree())
}

/// Norm of `sum coords[i] alpha^i`; missing trailing coordinates are zero.
///
/// # Safety
/// `coords` must point to `len` NUL-terminated strings; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn snp_extension_norm(
    ext: *const SnpExtension,
    coords: *const *const c_char,
    len: usize,
    out: *mut *mut c_char,
) -> SnpStatus {
    guard(|| {
        let ext = &handle(ext)?.inner;
        let x = ext
            .element(rationals(coords, len)?)
            .map_err(Failure::math)?;
        put_string(out, ext.norm(&x).to_string())
    })
}

/// The norm form of the extension.
///
/// # Safety
/// `ext` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn snp_extension_norm_form(
    ext: *const SnpExtension,
    out: *mut *mut SnpForm,
) -> SnpStatus {
    guard(|| {
        let inner = handle(ext)?.inner.norm_form().map_err(Failure::math)?;
        put(out, SnpForm { inner })
    })
}

/// Parse a form file over the rationals.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn snp_form_from_json(
    json: *const c_char,
    out: *mut *mut SnpForm,
) -> SnpStatus {
    guard(|| {
        let file = FormFile::parse(text(json)?).map_err(Failure::parse)?;
        match file.to_form().map_err(Failure::parse)? {
            AnyForm::Rational(inner) => put(out, SnpForm { inner }),
            AnyForm::Prime(_) => Err(Failure(
                SnpStatus::Unsupported,
                "only rational forms are supported".into(),
            )),
        }
    })
}

/// # Safety
/// `form` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn snp_form_free(form: *mut SnpForm) {
    if !form.is_null() {
        drop(Box::from_raw(form));
    }
}

/// # Safety
/// `form` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn snp_form_degree(form: *const SnpForm) -> u32 {
    form.as_ref().map_or(0, |f| f.inner.degree())
}

/// # Safety
/// `form` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn snp_form_dim(form: *const SnpForm) -> usize {
    form.as_ref().map_or(0, |f| f.inner.dim())
}

/// The form's polynomial as text.
///
/// # Safety
/// `form` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn snp_form_to_string(
    form: *const SnpForm,
    out: *mut *mut c_char,
) -> SnpStatus {
    guard(|| put_string(out, handle(form)?.inner.poly().to_string()))
}

/// The form as a form file.
///
/// # Safety
/// `form` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn snp_form_to_json(
    form: *const SnpForm,
    out: *mut *mut c_char,
) -> SnpStatus {
    guard(|| put_string(out, FormFile::from_form(&handle(form)?.inner).to_json()))
}

/// Value of the form at `coords`.
///
/// # Safety
/// `coords` must point to `len` NUL-terminated strings; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn snp_form_value(
    form: *const SnpForm,
    coords: *const *const c_char,
    len: usize,
    out: *mut *mut c_char,
) -> SnpStatus {
    guard(|| {
        let v = handle(form)?
            .inner
            .value(&rationals(coords, len)?)
            .map_err(Failure::math)?;
        put_string(out, v.to_string())
    })
}

/// Check that `form` is multiplicative for the multiplication of `ext`.
///
/// # Safety
/// Both handles must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn snp_verify_composition(
    ext: *const SnpExtension,
    form: *const SnpForm,
    out: *mut *mut SnpReport,
) -> SnpStatus {
    guard(|| {
        let alg = handle(ext)?.inner.multiplication().map_err(Failure::math)?;
        let r = permits_composition_check(&handle(form)?.inner, &alg).map_err(Failure::math)?;
        put_report(out, r)
    })
}

fn descent_mode(exact: bool, seed: u64) -> IdentityMode {
    if exact {
        IdentityMode::Exact
    } else {
        IdentityMode::default_probabilistic(seed)
    }
}

/// The norm descent identity for `x^d - c` (`trinomial` false) or
/// `x^d - b x - c` (`trinomial` true). `seed` is ignored when `exact`.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn snp_verify_descent(
    d: usize,
    trinomial: bool,
    exact: bool,
    seed: u64,
    out: *mut *mut SnpReport,
) -> SnpStatus {
    guard(|| {
        let mode = descent_mode(exact, seed);
        let r = if trinomial {
            verify_trinomial_descent(d, mode)
        } else {
            verify_pure_descent(d, mode)
        };
        put_report(out, r.map_err(Failure::math)?)
    })
}

/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn snp_report_free(report: *mut SnpReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Whether the check held; false for a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn snp_report_passed(report: *const SnpReport) -> bool {
    report.as_ref().is_some_and(|r| r.inner.pass)
}

/// # Safety
/// `report` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn snp_report_to_json(
    report: *const SnpReport,
    out: *mut *mut c_char,
) -> SnpStatus {
    guard(|| put_string(out, handle(report)?.inner.to_json()))
}

/// # Safety
/// `report` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn snp_report_to_text(
    report: *const SnpReport,
    out: *mut *mut c_char,
) -> SnpStatus {
    guard(|| put_string(out, handle(report)?.inner.to_text()))
}
