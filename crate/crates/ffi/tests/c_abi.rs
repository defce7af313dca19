use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use snp_ffi::*;

const CBRT2: &str =
    r#"{"base": {"kind": "rationals"}, "minpoly": ["-2", "0", "0", "1"], "generator": "alpha"}"#;
const CUBE_SUM: &str = r#"{"degree": 3, "dim": 3, "field": {"kind": "rationals"},
 "terms": [["1", [3,0,0]], ["1", [0,3,0]], ["1", [0,0,3]]]}"#;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    snp_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(snp_last_error())
        .to_str()
        .unwrap()
        .to_string()
}

unsafe fn extension() -> *mut SnpExtension {
    let mut ext = ptr::null_mut();
    assert_eq!(
        snp_extension_from_json(c(CBRT2).as_ptr(), &mut ext),
        SnpStatus::Ok
    );
    ext
}

#[test]
fn norm_and_norm_form_agree() {
    unsafe {
        let ext = extension();
        assert_eq!(snp_extension_degree(ext), 3);
        let coords = [c("1"), c("1"), c("0")];
        let ptrs: Vec<*const c_char> = coords.iter().map(|s| s.as_ptr()).collect();
        let mut norm = ptr::null_mut();
        assert_eq!(
            snp_extension_norm(ext, ptrs.as_ptr(), 3, &mut norm),
            SnpStatus::Ok
        );
        // N(1 + cbrt2) = 1 + 2 = 3
        assert_eq!(take(norm), "3");

        let mut form = ptr::null_mut();
        assert_eq!(snp_extension_norm_form(ext, &mut form), SnpStatus::Ok);
        assert_eq!((snp_form_degree(form), snp_form_dim(form)), (3, 3));
        let mut value = ptr::null_mut();
        assert_eq!(
            snp_form_value(form, ptrs.as_ptr(), 3, &mut value),
            SnpStatus::Ok
        );
        assert_eq!(take(value), "3");

        let mut report = ptr::null_mut();
        assert_eq!(
            snp_verify_composition(ext, form, &mut report),
            SnpStatus::Ok
        );
        assert!(snp_report_passed(report));
        snp_report_free(report);

        let mut json = ptr::null_mut();
        assert_eq!(snp_form_to_json(form, &mut json), SnpStatus::Ok);
        let mut again = ptr::null_mut();
        let json = c(&take(json));
        assert_eq!(snp_form_from_json(json.as_ptr(), &mut again), SnpStatus::Ok);
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        snp_form_to_string(form, &mut a);
        snp_form_to_string(again, &mut b);
        assert_eq!(take(a), take(b));

        snp_form_free(again);
        snp_form_free(form);
        snp_extension_free(ext);
    }
}

#[test]
fn failing_check_is_a_report_not_an_error() {
    unsafe {
        let ext = extension();
        let mut form = ptr::null_mut();
        assert_eq!(
            snp_form_from_json(c(CUBE_SUM).as_ptr(), &mut form),
            SnpStatus::Ok
        );
        let mut report = ptr::null_mut();
        assert_eq!(
            snp_verify_composition(ext, form, &mut report),
            SnpStatus::Ok
        );
        assert!(!snp_report_passed(report));
        let mut text = ptr::null_mut();
        assert_eq!(snp_report_to_text(report, &mut text), SnpStatus::Ok);
        assert!(take(text).contains("FAIL"));
        snp_report_free(report);
        snp_form_free(form);
        snp_extension_free(ext);
    }
}

#[test]
fn descent_reports() {
    unsafe {
        let mut report = ptr::null_mut();
        assert_eq!(
            snp_verify_descent(3, true, true, 0, &mut report),
            SnpStatus::Ok
        );
        assert!(snp_report_passed(report));
        let mut json = ptr::null_mut();
        assert_eq!(snp_report_to_json(report, &mut json), SnpStatus::Ok);
        assert!(take(json).contains("\"trinomial-descent\""));
        snp_report_free(report);

        assert_eq!(
            snp_verify_descent(4, false, false, 9, &mut report),
            SnpStatus::Ok
        );
        assert!(snp_report_passed(report));
        snp_report_free(report);

        assert_eq!(
            snp_verify_descent(1, false, true, 0, &mut report),
            SnpStatus::Arithmetic
        );
        assert!(!last_error().is_empty());
    }
}

#[test]
fn errors_are_codes() {
    unsafe {
        let mut ext = ptr::null_mut();
        assert_eq!(
            snp_extension_from_json(ptr::null(), &mut ext),
            SnpStatus::NullPointer
        );
        assert_eq!(
            snp_extension_from_json(c("{not json").as_ptr(), &mut ext),
            SnpStatus::Parse
        );
        assert!(!last_error().is_empty());
        assert!(ext.is_null());

        let bad = [0xffu8, 0];
        assert_eq!(
            snp_extension_from_json(bad.as_ptr().cast(), &mut ext),
            SnpStatus::InvalidUtf8
        );

        let ext = extension();
        assert!(last_error().is_empty());
        let coords = [c("1/2"), c("x")];
        let ptrs: Vec<*const c_char> = coords.iter().map(|s| s.as_ptr()).collect();
        let mut out = ptr::null_mut();
        assert_eq!(
            snp_extension_norm(ext, ptrs.as_ptr(), 2, &mut out),
            SnpStatus::Parse
        );
        // missing coordinates are zero
        assert_eq!(
            snp_extension_norm(ext, ptrs.as_ptr(), 1, &mut out),
            SnpStatus::Ok
        );
        assert_eq!(take(out), "1/8");
        let four = [c("1"), c("0"), c("0"), c("0")];
        let four: Vec<*const c_char> = four.iter().map(|s| s.as_ptr()).collect();
        assert_eq!(
            snp_extension_norm(ext, four.as_ptr(), 4, &mut out),
            SnpStatus::Arithmetic
        );
        assert_eq!(
            snp_extension_norm(ptr::null(), ptrs.as_ptr(), 1, &mut out),
            SnpStatus::NullPointer
        );
        assert_eq!(snp_extension_degree(ptr::null()), 0);
        assert!(!snp_report_passed(ptr::null()));
        snp_extension_free(ext);
        snp_extension_free(ptr::null_mut());
        snp_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_interface() {
    let header = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/snp.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "typedef struct SnpExtension SnpExtension",
        "typedef struct SnpForm SnpForm",
        "typedef struct SnpReport SnpReport",
        "SNP_STATUS_OK = 0",
        "snp_last_error",
        "snp_verify_descent",
        "snp_report_to_json",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    // the header must stand alone as C
    if let Ok(out) = Command::new("cc")
        .args(["-fsyntax-only", "-x", "c"])
        .arg(&header)
        .output()
    {
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}
