use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use superdg_ffi::*;

const KOSZUL: &str = r#"{"generators":[{"name":"x","weight":0,"parity":"even"},
    {"name":"xi","weight":1,"parity":"odd"}],"differential":{"x":"xi"}}"#;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    sdg_string_free(p);
    s
}

unsafe fn last_error() -> String {
    CStr::from_ptr(sdg_last_error()).to_str().unwrap().to_owned()
}

unsafe fn algebra(json: &str) -> *mut SdgAlgebra {
    let mut a = ptr::null_mut();
    assert_eq!(sdg_algebra_from_json(cstr(json).as_ptr(), &mut a), SdgStatus::Ok);
    a
}

unsafe fn element(a: *const SdgAlgebra, expr: &str) -> *mut SdgElement {
    let mut e = ptr::null_mut();
    assert_eq!(sdg_element_parse(a, cstr(expr).as_ptr(), &mut e), SdgStatus::Ok, "{}", last_error());
    e
}

unsafe fn show(e: *const SdgElement) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(sdg_element_to_string(e, &mut s), SdgStatus::Ok);
    take_string(s)
}

#[test]
fn arithmetic_and_differential_round_trip() {
    unsafe {
        let a = algebra(KOSZUL);
        assert_eq!(sdg_algebra_generator_count(a), 2);
        let x = element(a, "x^2");
        let xi = element(a, "xi");
        let mut p = ptr::null_mut();
        assert_eq!(sdg_element_mul(xi, x, &mut p), SdgStatus::Ok);
        assert_eq!(show(p), "x^2 * xi");
        let mut dx = ptr::null_mut();
        assert_eq!(sdg_element_differential(a, x, &mut dx), SdgStatus::Ok);
        assert_eq!(show(dx), "2 * x * xi");
        let mut px = ptr::null_mut();
        assert_eq!(sdg_element_partial(x, cstr("x").as_ptr(), &mut px), SdgStatus::Ok);
        assert_eq!(show(px), "2 * x");
        let mut sum = ptr::null_mut();
        assert_eq!(sdg_element_add(px, px, &mut sum), SdgStatus::Ok);
        let mut diff = ptr::null_mut();
        assert_eq!(sdg_element_sub(sum, px, &mut diff), SdgStatus::Ok);
        let mut eq = 0;
        assert_eq!(sdg_element_equal(diff, px, &mut eq), SdgStatus::Ok);
        assert_eq!(eq, 1);
        for e in [x, xi, p, dx, px, sum, diff] {
            sdg_element_free(e);
        }
        sdg_algebra_free(a);
    }
}

#[test]
fn cohomology_and_documents() {
    unsafe {
        let a = algebra(KOSZUL);
        let mut out = ptr::null_mut();
        assert_eq!(sdg_cohomology_json(a, 0, 1, 4, &mut out), SdgStatus::Ok);
        let h: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        let dims: Vec<u64> = h.as_array().unwrap().iter().map(|e| e["dimension"].as_u64().unwrap()).collect();
        assert_eq!(dims, vec![1, 0, 0, 0]);
        assert_eq!(sdg_algebra_to_json(a, &mut out), SdgStatus::Ok);
        let doc = take_string(out);
        let b = algebra(&doc);
        sdg_algebra_free(b);
        sdg_algebra_free(a);

        let complex = r#"{"components":[{"weight":0,"parity":"even","dim":1},{"weight":1,"parity":"odd","dim":1}]}"#;
        assert_eq!(sdg_complex_cohomology_json(cstr(complex).as_ptr(), &mut out), SdgStatus::Ok);
        assert_eq!(take_string(out), r#"[[0,"even",1],[1,"odd",1]]"#);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut a = ptr::null_mut();
        let bad = r#"{"generators":[{"name":"x","weight":0,"parity":"even"}],"differential":{"x":"x"}}"#;
        assert_eq!(sdg_algebra_from_json(cstr(bad).as_ptr(), &mut a), SdgStatus::VerificationFailed);
        assert!(last_error().starts_with("bidegree violation at generator x"));
        assert!(a.is_null());
        assert_eq!(sdg_algebra_from_json(cstr("{").as_ptr(), &mut a), SdgStatus::InvalidInput);
        assert_eq!(sdg_algebra_from_json(ptr::null(), &mut a), SdgStatus::NullArgument);

        let k = algebra(KOSZUL);
        let mut e = ptr::null_mut();
        assert_eq!(sdg_element_parse(k, cstr("x +* 2").as_ptr(), &mut e), SdgStatus::ParseError);
        assert_eq!(sdg_element_parse(k, cstr("zeta").as_ptr(), &mut e), SdgStatus::ParseError);

        let other = algebra(r#"{"generators":[{"name":"x","weight":0,"parity":"even"}]}"#);
        let x1 = element(k, "x");
        let x2 = element(other, "x");
        let mut p = ptr::null_mut();
        assert_eq!(sdg_element_mul(x1, x2, &mut p), SdgStatus::TableMismatch);
        assert_eq!(sdg_element_mul(x1, x1, ptr::null_mut()), SdgStatus::NullArgument);
        assert_eq!(sdg_element_mul(x1, x1, &mut p), SdgStatus::Ok);
        assert_eq!(last_error(), "");
        for h in [x1, x2, p] {
            sdg_element_free(h);
        }
        sdg_algebra_free(k);
        sdg_algebra_free(other);
        sdg_algebra_free(ptr::null_mut());
        sdg_string_free(ptr::null_mut());
    }
}

#[test]
fn version_matches_the_engine() {
    let v = unsafe { CStr::from_ptr(sdg_version()) };
    assert_eq!(v.to_str().unwrap(), superdg::VERSION);
}

#[test]
fn header_declares_the_api_and_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/superdg.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "sdg_algebra_from_json",
        "sdg_element_parse",
        "sdg_element_mul",
        "sdg_cohomology_json",
        "sdg_last_error",
        "SDG_STATUS_VERIFICATION_FAILED",
        "typedef struct SdgAlgebra SdgAlgebra",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
    // Syntax-check with the system C compiler when one is installed.
    if let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-x", "c"]).arg(&header).output() {
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
}
