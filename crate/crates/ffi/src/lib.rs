//! C ABI over the `downup` kernel.
//!
//! Algebras are opaque [`DuAlgebra`] handles. Every fallible call returns a
//! [`DuStatus`]; on failure the message is available from
//! [`du_last_error_message`] on the same thread. Strings returned through
//! `char **` out-parameters are owned by the caller and released with
//! [`du_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use downup::algebra::Algebra;
use downup::classify::{classify, compute_s, ClassifyOptions, RelationGroup};
use downup::cli::config::{AlgebraConfig, Bounds, Literal, PhiSpec};
use downup::cli::{evaluate, load_str, Loaded};
use downup::DownUpError;

/// Status codes. Values below 100 are interface failures; 100 and above
/// mirror the kernel's domain errors.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DuStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Panic = 3,
    DivisionByZero = 100,
    ZeroInput = 101,
    NotNoetherian = 102,
    NotHomogeneous = 103,
    RequiresRNotOne = 104,
    NotConformal = 105,
    UnsupportedRegime = 106,
    IsConformal = 107,
    HypothesisFailed = 108,
    NeedsSquareRootOfR = 109,
    UndecidableAtBound = 110,
    SyntaxError = 111,
    UnknownSymbol = 112,
    InvalidConfig = 113,
    DimensionTooLarge = 114,
}

impl From<&DownUpError> for DuStatus {
    fn from(e: &DownUpError) -> Self {
        match e {
            DownUpError::DivisionByZero => DuStatus::DivisionByZero,
            DownUpError::ZeroInput => DuStatus::ZeroInput,
            DownUpError::NotNoetherian => DuStatus::NotNoetherian,
            DownUpError::NotHomogeneous => DuStatus::NotHomogeneous,
            DownUpError::RequiresRNotOne => DuStatus::RequiresRNotOne,
            DownUpError::NotConformal { .. } => DuStatus::NotConformal,
            DownUpError::UnsupportedRegime => DuStatus::UnsupportedRegime,
            DownUpError::IsConformal => DuStatus::IsConformal,
            DownUpError::HypothesisFailed(_) => DuStatus::HypothesisFailed,
            DownUpError::NeedsSquareRootOfR => DuStatus::NeedsSquareRootOfR,
            DownUpError::UndecidableAtBound(_) => DuStatus::UndecidableAtBound,
            DownUpError::SyntaxError { .. } => DuStatus::SyntaxError,
            DownUpError::UnknownSymbol(_) => DuStatus::UnknownSymbol,
            DownUpError::InvalidConfig(_) => DuStatus::InvalidConfig,
            DownUpError::DimensionTooLarge(_) => DuStatus::DimensionTooLarge,
        }
    }
}

/// Shape of a relation group `S(r,s)`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DuGroupKind {
    Trivial = 0,
    /// Generated by `(n, m)`.
    SameSign = 1,
    /// Generated by `(n, -m)`.
    OppositeSign = 2,
    /// Basis `(n, m), (0, c)`.
    Lattice = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DuRelationGroup {
    pub kind: DuGroupKind,
    pub n: u32,
    pub m: u32,
    pub c: u32,
}

/// An algebra together with its configured bounds.
pub struct DuAlgebra {
    loaded: Loaded,
    algebra: Algebra,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

enum Fail {
    Status(DuStatus, String),
    Domain(DownUpError),
}

impl From<DownUpError> for Fail {
    fn from(e: DownUpError) -> Self {
        Fail::Domain(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> DuStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DuStatus::Ok,
        Ok(Err(Fail::Domain(e))) => {
            set_error(format!("{}: {e}", e.name()));
            DuStatus::from(&e)
        }
        Ok(Err(Fail::Status(s, msg))) => {
            set_error(msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            set_error(format!("panic: {msg}"));
            DuStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Status(DuStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Status(DuStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn handle<'a>(p: *const DuAlgebra) -> Result<&'a DuAlgebra, Fail> {
    p.as_ref().ok_or_else(|| Fail::Status(DuStatus::NullArgument, "algebra handle is null".into()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Status(DuStatus::NullArgument, "output pointer is null".into()));
    }
    *out = CString::new(s).unwrap().into_raw();
    Ok(())
}

unsafe fn write_handle(out: *mut *mut DuAlgebra, loaded: Loaded) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Status(DuStatus::NullArgument, "output pointer is null".into()));
    }
    let algebra = Algebra::new(loaded.params.clone());
    *out = Box::into_raw(Box::new(DuAlgebra { loaded, algebra }));
    Ok(())
}

/// Builds an algebra from the same TOML accepted by the `downup` binary.
///
/// # Safety
/// `toml` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn du_algebra_from_toml(toml: *const c_char, out: *mut *mut DuAlgebra) -> DuStatus {
    guard(|| {
        let src = text(toml, "toml")?;
        write_handle(out, load_str(src)?)
    })
}

/// Builds `L(phi, r, s, gamma)` from expression strings, e.g. `"h^2 + 1"`,
/// `"zeta(3)"`, `"1/2"`. The conductor is inferred and bounds are defaults.
///
/// # Safety
/// All strings must be NUL-terminated and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn du_algebra_new(
    phi: *const c_char,
    r: *const c_char,
    s: *const c_char,
    gamma: *const c_char,
    out: *mut *mut DuAlgebra,
) -> DuStatus {
    guard(|| {
        let lit = |p, what| text(p, what).map(|t| Literal::Text(t.to_string()));
        let cfg = AlgebraConfig {
            conductor: None,
            r: lit(r, "r")?,
            s: lit(s, "s")?,
            gamma: lit(gamma, "gamma")?,
            phi: PhiSpec::Expr(lit(phi, "phi")?),
            relation: None,
            bounds: Bounds::default(),
        };
        write_handle(out, cfg.load()?)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `a` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn du_algebra_free(a: *mut DuAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Normal form of an element expression in the basis `u^i h^j d^k`.
///
/// # Safety
/// `a` must be a live handle, `expr` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn du_normalize(a: *const DuAlgebra, expr: *const c_char, out: *mut *mut c_char) -> DuStatus {
    guard(|| {
        let a = handle(a)?;
        let x = evaluate(&a.algebra, text(expr, "expr")?)?;
        write_string(out, x.to_string())
    })
}

/// Normal form of the product `left * right`.
///
/// # Safety
/// As for [`du_normalize`].
#[no_mangle]
pub unsafe extern "C" fn du_mul(
    a: *const DuAlgebra,
    left: *const c_char,
    right: *const c_char,
    out: *mut *mut c_char,
) -> DuStatus {
    guard(|| {
        let a = handle(a)?;
        let x = evaluate(&a.algebra, text(left, "left")?)?;
        let y = evaluate(&a.algebra, text(right, "right")?)?;
        write_string(out, a.algebra.mul(&x, &y).to_string())
    })
}

/// The classification report as JSON, identical to the `result` object of
/// `downup classify --json`.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn du_classify_json(a: *const DuAlgebra, out: *mut *mut c_char) -> DuStatus {
    guard(|| {
        let a = handle(a)?;
        let rep = classify(&a.loaded.params, &ClassifyOptions { s_options: a.loaded.s_options() })?;
        write_string(out, serde_json::to_string_pretty(&rep).unwrap())
    })
}

/// The relation group `S(r,s)` of the algebra's parameters.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn du_relation_group(a: *const DuAlgebra, out: *mut DuRelationGroup) -> DuStatus {
    guard(|| {
        let a = handle(a)?;
        if out.is_null() {
            return Err(Fail::Status(DuStatus::NullArgument, "output pointer is null".into()));
        }
        let p = &a.loaded.params;
        let g = compute_s(&p.r, &p.s, &a.loaded.s_options())?.group;
        let (kind, n, m, c) = match g {
            RelationGroup::Trivial => (DuGroupKind::Trivial, 0, 0, 0),
            RelationGroup::SameSign { n, m } => (DuGroupKind::SameSign, n, m, 0),
            RelationGroup::OppositeSign { n, m } => (DuGroupKind::OppositeSign, n, m, 0),
            RelationGroup::Lattice { a, b, c } => (DuGroupKind::Lattice, a, b, c),
        };
        *out = DuRelationGroup { kind, n, m, c };
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn du_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn du_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn du_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
