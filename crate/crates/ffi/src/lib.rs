//! C ABI over the superdg engine.
//!
//! Algebras and elements are opaque heap handles released with their `_free`
//! functions. Every fallible call returns an [`SdgStatus`]; on failure the
//! message is available from [`sdg_last_error`] on the same thread until the
//! next call. Strings returned through `out` parameters are owned by the
//! caller and released with [`sdg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use superdg::algebra::parse;
use superdg::dg::{cohomology, Window};
use superdg::document::AlgebraDocument;
use superdg::model::Complex;
use superdg::{DgAlgebra, Element, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SdgStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    VerificationFailed = 5,
    TableMismatch = 6,
    CapInsufficient = 7,
    Panic = 8,
}

/// Opaque free dg algebra.
pub struct SdgAlgebra {
    inner: DgAlgebra,
}

/// Opaque element of a free algebra.
pub struct SdgElement {
    inner: Element,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SdgStatus {
    match e {
        Error::Parse { .. } | Error::UnknownGenerator(_) => SdgStatus::ParseError,
        Error::BidegreeViolation { .. }
        | Error::NotSquareZero { .. }
        | Error::NotChainMap { .. }
        | Error::NotMultiplicative { .. } => SdgStatus::VerificationFailed,
        Error::TableMismatch => SdgStatus::TableMismatch,
        Error::CapInsufficient(_) => SdgStatus::CapInsufficient,
        _ => SdgStatus::InvalidInput,
    }
}

enum Failure {
    Status(SdgStatus, String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

/// Runs `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SdgStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SdgStatus::Ok,
        Ok(Err(Failure::Status(s, msg))) => {
            set_error(&msg);
            s
        }
        Ok(Err(Failure::Engine(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            SdgStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Status(SdgStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Status(SdgStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn reference<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::Status(SdgStatus::NullArgument, format!("{what} is null")))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Status(SdgStatus::NullArgument, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Status(SdgStatus::NullArgument, "output pointer is null".into()));
    }
    *out =
        CString::new(s).map_err(|_| Failure::Status(SdgStatus::InvalidInput, "string contains NUL".into()))?.into_raw();
    Ok(())
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn sdg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sdg_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library, released once.
#[no_mangle]
pub unsafe extern "C" fn sdg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds an algebra from its JSON description and validates the differential.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sdg_algebra_from_json(json: *const c_char, out: *mut *mut SdgAlgebra) -> SdgStatus {
    guard(|| {
        let doc = AlgebraDocument::from_json(text(json, "json")?)?;
        write_out(out, SdgAlgebra { inner: doc.load()? })
    })
}

/// # Safety
/// `a` must be null or a handle from this library, released once.
#[no_mangle]
pub unsafe extern "C" fn sdg_algebra_free(a: *mut SdgAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Number of generators, or 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sdg_algebra_generator_count(a: *const SdgAlgebra) -> usize {
    a.as_ref().map_or(0, |a| a.inner.table().len())
}

/// JSON description of the algebra.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sdg_algebra_to_json(a: *const SdgAlgebra, out: *mut *mut c_char) -> SdgStatus {
    guard(|| {
        let a = reference(a, "algebra")?;
        let json = serde_json_string(&AlgebraDocument::of(&a.inner))?;
        write_string(out, json)
    })
}

fn serde_json_string<T: serde::Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string(v).map_err(|e| Failure::Status(SdgStatus::InvalidInput, e.to_string()))
}

/// Parses an expression over the algebra's generators.
///
/// # Safety
/// `a` must be a live handle, `expr` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sdg_element_parse(
    a: *const SdgAlgebra,
    expr: *const c_char,
    out: *mut *mut SdgElement,
) -> SdgStatus {
    guard(|| {
        let a = reference(a, "algebra")?;
        let e = parse(text(expr, "expression")?, a.inner.table())?;
        write_out(out, SdgElement { inner: e })
    })
}

/// # Safety
/// `e` must be null or a handle from this library, released once.
#[no_mangle]
pub unsafe extern "C" fn sdg_element_free(e: *mut SdgElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Canonical printed form.
///
/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sdg_element_to_string(e: *const SdgElement, out: *mut *mut c_char) -> SdgStatus {
    guard(|| write_string(out, reference(e, "element")?.inner.to_string()))
}

unsafe fn binary(
    a: *const SdgElement,
    b: *const SdgElement,
    out: *mut *mut SdgElement,
    op: fn(&Element, &Element) -> superdg::Result<Element>,
) -> SdgStatus {
    guard(|| {
        let x = &reference(a, "left operand")?.inner;
        let y = &reference(b, "right operand")?.inner;
        write_out(out, SdgElement { inner: op(x, y)? })
    })
}

/// # Safety
/// `a`, `b` must be live handles over the same algebra; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sdg_element_add(
    a: *const SdgElement,
    b: *const SdgElement,
    out: *mut *mut SdgElement,
) -> SdgStatus {
    binary(a, b, out, Element::try_add)
}

/// # Safety
/// `a`, `b` must be live handles over the same algebra; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sdg_element_sub(
    a: *const SdgElement,
    b: *const SdgElement,
    out: *mut *mut SdgElement,
) -> SdgStatus {
    binary(a, b, out, Element::try_sub)
}

/// Supercommutative product.
///
/// # Safety
/// `a`, `b` must be live handles over the same algebra; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sdg_element_mul(
    a: *const SdgElement,
    b: *const SdgElement,
    out: *mut *mut SdgElement,
) -> SdgStatus {
    binary(a, b, out, Element::try_mul)
}

/// Writes 1 to `out` if the elements are equal, else 0.
///
/// # Safety
/// `a`, `b` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sdg_element_equal(a: *const SdgElement, b: *const SdgElement, out: *mut i32) -> SdgStatus {
    guard(|| {
        let x = &reference(a, "left operand")?.inner;
        let y = &reference(b, "right operand")?.inner;
        if out.is_null() {
            return Err(Failure::Status(SdgStatus::NullArgument, "output pointer is null".into()));
        }
        *out = i32::from(x == y);
        Ok(())
    })
}

/// Left partial derivative by a named generator.
///
/// # Safety
/// `e` must be a live handle, `name` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sdg_element_partial(
    e: *const SdgElement,
    name: *const c_char,
    out: *mut *mut SdgElement,
) -> SdgStatus {
    guard(|| {
        let e = &reference(e, "element")?.inner;
        let d = e.partial_by_name(text(name, "generator name")?)?;
        write_out(out, SdgElement { inner: d })
    })
}

/// Applies the algebra's differential.
///
/// # Safety
/// `a`, `e` must be live handles with `e` over `a`; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sdg_element_differential(
    a: *const SdgAlgebra,
    e: *const SdgElement,
    out: *mut *mut SdgElement,
) -> SdgStatus {
    guard(|| {
        let a = &reference(a, "algebra")?.inner;
        let e = &reference(e, "element")?.inner;
        write_out(out, SdgElement { inner: a.d(e)? })
    })
}

/// Cohomology per bidegree in `[w_min, w_max]` as a JSON array.
///
/// # Safety
/// `a` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sdg_cohomology_json(
    a: *const SdgAlgebra,
    w_min: i64,
    w_max: i64,
    degree_cap: u32,
    out: *mut *mut c_char,
) -> SdgStatus {
    guard(|| {
        let a = &reference(a, "algebra")?.inner;
        let h = cohomology(a, Window::new(w_min, w_max)?, degree_cap)?;
        write_string(out, serde_json_string(&h)?)
    })
}

/// Cohomology dimensions of a finite cochain complex given as JSON.
///
/// # Safety
/// `json` must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sdg_complex_cohomology_json(json: *const c_char, out: *mut *mut c_char) -> SdgStatus {
    guard(|| {
        let c: Complex = serde_json::from_str(text(json, "json")?)
            .map_err(|e| Failure::Status(SdgStatus::InvalidInput, e.to_string()))?;
        let rows: Vec<(i64, superdg::Parity, usize)> =
            c.cohomology().into_iter().map(|((w, p), d)| (w, p, d)).collect();
        write_string(out, serde_json_string(&rows)?)
    })
}
