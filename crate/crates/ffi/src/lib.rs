//! C ABI over `affine_leibniz`.
//!
//! Algebras are opaque `AlAlgebra` handles released with `al_algebra_free`.
//! Every fallible call returns an `AlStatus`; on failure the message is
//! available from `al_last_error_message` on the same thread. Strings
//! returned through out-pointers are released with `al_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use affine_leibniz::homology::{homology_dims, ComplexKind, HomologyConfig, Mode};
use affine_leibniz::invariants::{invariants_of, AffineContext, InvariantConfig, ModuleDescriptor};
use affine_leibniz::liealg::{build_abelian, build_affine, build_so, LieAlgebra, Signature};
use affine_leibniz::verify::{run_suite, Suite, VerifyConfig};
use affine_leibniz::Error;
use num_bigint::BigInt;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    CapExceeded = 3,
    CheckFailed = 4,
    Overflow = 5,
    Panic = 6,
}

/// Opaque algebra handle.
pub struct AlAlgebra {
    inner: Arc<LieAlgebra>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn fail(status: AlStatus, msg: impl Into<String>) -> AlStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> AlStatus {
    let status = match e {
        Error::CapExceeded { .. } => AlStatus::CapExceeded,
        Error::DifferentialCheck(_) => AlStatus::CheckFailed,
        _ => AlStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

fn to_i64(v: &BigInt) -> Option<i64> {
    i64::try_from(v).ok()
}

fn guard(f: impl FnOnce() -> AlStatus) -> AlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(AlStatus::Panic, "internal panic"),
    }
}

/// Message of the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn al_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

fn store_algebra(alg: LieAlgebra, out: *mut *mut AlAlgebra) -> AlStatus {
    if out.is_null() {
        return fail(AlStatus::NullPointer, "out is null");
    }
    let handle = Box::new(AlAlgebra { inner: Arc::new(alg) });
    unsafe { *out = Box::into_raw(handle) };
    AlStatus::Ok
}

/// Builds `so(p,q)`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn al_algebra_so(p: usize, q: usize, out: *mut *mut AlAlgebra) -> AlStatus {
    guard(|| match Signature::new(p, q) {
        Ok(sig) => store_algebra(build_so(sig), out),
        Err(e) => from_error(e),
    })
}

/// Builds the affine algebra `I_n ⋊ so(p,q)`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn al_algebra_affine(p: usize, q: usize, out: *mut *mut AlAlgebra) -> AlStatus {
    guard(|| match Signature::new(p, q) {
        Ok(sig) => store_algebra(build_affine(sig), out),
        Err(e) => from_error(e),
    })
}

/// Builds the abelian algebra of dimension `n`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn al_algebra_abelian(n: usize, out: *mut *mut AlAlgebra) -> AlStatus {
    guard(|| match build_abelian(n) {
        Ok(a) => store_algebra(a, out),
        Err(e) => from_error(e),
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `alg` must come from one of the constructors and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn al_algebra_free(alg: *mut AlAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

unsafe fn algebra<'a>(alg: *const AlAlgebra) -> Option<&'a AlAlgebra> {
    alg.as_ref()
}

/// Dimension of the algebra.
///
/// # Safety
/// `alg` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn al_algebra_dim(alg: *const AlAlgebra, out: *mut usize) -> AlStatus {
    guard(|| {
        let (Some(a), false) = (algebra(alg), out.is_null()) else {
            return fail(AlStatus::NullPointer, "null argument");
        };
        *out = a.inner.dim();
        AlStatus::Ok
    })
}

/// Coefficient of `e_c` in `[e_a, e_b]` as a reduced fraction.
///
/// # Safety
/// `alg` must be a live handle; `num` and `den` writable.
#[no_mangle]
pub unsafe extern "C" fn al_algebra_bracket(
    alg: *const AlAlgebra,
    a: usize,
    b: usize,
    c: usize,
    num: *mut i64,
    den: *mut i64,
) -> AlStatus {
    guard(|| {
        let (Some(h), false, false) = (algebra(alg), num.is_null(), den.is_null()) else {
            return fail(AlStatus::NullPointer, "null argument");
        };
        let d = h.inner.dim();
        if a >= d || b >= d || c >= d {
            return fail(AlStatus::InvalidArgument, format!("index out of range for dimension {d}"));
        }
        let coef = h.inner.bracket(a, b).iter().find(|(i, _)| *i == c).map(|(_, v)| v.clone());
        match coef {
            None => {
                *num = 0;
                *den = 1;
                AlStatus::Ok
            }
            Some(v) => match (to_i64(v.numer()), to_i64(v.denom())) {
                (Some(n), Some(m)) => {
                    *num = n;
                    *den = m;
                    AlStatus::Ok
                }
                _ => fail(AlStatus::Overflow, "coefficient does not fit in 64 bits"),
            },
        }
    })
}

fn give_string(s: String, out: *mut *mut c_char) -> AlStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            AlStatus::Ok
        }
        Err(_) => fail(AlStatus::InvalidArgument, "string contains NUL"),
    }
}

/// Label of basis element `i` (for example `d1`, `X12`, `Y13`).
///
/// # Safety
/// `alg` must be a live handle and `out` writable. Free the result with
/// `al_string_free`.
#[no_mangle]
pub unsafe extern "C" fn al_algebra_label(alg: *const AlAlgebra, i: usize, out: *mut *mut c_char) -> AlStatus {
    guard(|| {
        let (Some(a), false) = (algebra(alg), out.is_null()) else {
            return fail(AlStatus::NullPointer, "null argument");
        };
        if i >= a.inner.dim() {
            return fail(AlStatus::InvalidArgument, format!("index {i} out of range"));
        }
        give_string(a.inner.label(i).to_string(), out)
    })
}

/// Runs antisymmetry, Jacobi and grading checks.
///
/// # Safety
/// `alg` must be a live handle and `passed` writable.
#[no_mangle]
pub unsafe extern "C" fn al_algebra_validate(alg: *const AlAlgebra, passed: *mut bool) -> AlStatus {
    guard(|| {
        let (Some(a), false) = (algebra(alg), passed.is_null()) else {
            return fail(AlStatus::NullPointer, "null argument");
        };
        *passed = a.inner.validate().passed();
        AlStatus::Ok
    })
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, AlStatus> {
    if s.is_null() {
        return Err(fail(AlStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(AlStatus::InvalidArgument, "string is not UTF-8"))
}

/// Dimension of the invariant subspace of a module given in the descriptor
/// grammar (`wedge:I:k`, `I*wedge:k`, `so*wedge:k`, `tensor:h:k`, `so`).
///
/// # Safety
/// `descriptor` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn al_invariant_dim(p: usize, q: usize, descriptor: *const c_char, out: *mut usize) -> AlStatus {
    guard(|| {
        if out.is_null() {
            return fail(AlStatus::NullPointer, "out is null");
        }
        let text = match read_str(descriptor) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let run = || -> Result<usize, Error> {
            let sig = Signature::new(p, q)?;
            let module: ModuleDescriptor = text.parse()?;
            let ctx = AffineContext::new(sig);
            Ok(invariants_of(&ctx, module, &InvariantConfig::default())?.dim)
        };
        match run() {
            Ok(d) => {
                *out = d;
                AlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Loday Betti numbers in degrees `0..=max_degree`, written to `out`
/// (which must hold at least `max_degree + 1` entries). `modular` allows
/// two-prime ranks above the exact cap.
///
/// # Safety
/// `alg` must be a live handle and `out` must point to `len` writable slots.
#[no_mangle]
pub unsafe extern "C" fn al_homology_dims(
    alg: *const AlAlgebra,
    max_degree: usize,
    modular: bool,
    seed: u64,
    out: *mut usize,
    len: usize,
) -> AlStatus {
    guard(|| {
        let (Some(a), false) = (algebra(alg), out.is_null()) else {
            return fail(AlStatus::NullPointer, "null argument");
        };
        if len <= max_degree {
            return fail(AlStatus::InvalidArgument, format!("output holds {len} entries, need {}", max_degree + 1));
        }
        let config = HomologyConfig {
            max_degree,
            mode: if modular { Mode::Modular } else { Mode::Exact },
            seed,
            ..HomologyConfig::default()
        };
        match homology_dims(&a.inner, ComplexKind::Loday, &config) {
            Ok(r) => {
                let slots = std::slice::from_raw_parts_mut(out, len);
                for (slot, b) in slots.iter_mut().zip(r.bettis()) {
                    *slot = b;
                }
                if r.disagreements().is_empty() {
                    AlStatus::Ok
                } else {
                    fail(AlStatus::CheckFailed, "modular ranks disagree between primes")
                }
            }
            Err(e) => from_error(e),
        }
    })
}

/// Runs a verification suite (`structure`, `paper` or `all`) and returns
/// the JSON report. `passed` receives whether every gating check passed.
///
/// # Safety
/// `suite` must be a NUL-terminated string; `out` and `passed` writable.
/// Free the result with `al_string_free`.
#[no_mangle]
pub unsafe extern "C" fn al_verify_json(
    p: usize,
    q: usize,
    suite: *const c_char,
    seed: u64,
    passed: *mut bool,
    out: *mut *mut c_char,
) -> AlStatus {
    guard(|| {
        if out.is_null() || passed.is_null() {
            return fail(AlStatus::NullPointer, "null argument");
        }
        let text = match read_str(suite) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let run = || -> Result<(bool, String), Error> {
            let sig = Signature::new(p, q)?;
            let suite: Suite = text.parse()?;
            let report = run_suite(sig, suite, &VerifyConfig { seed, ..VerifyConfig::default() })?;
            Ok((report.passed(), serde_json::to_string(&report).expect("report serializes")))
        };
        match run() {
            Ok((ok, json)) => {
                *passed = ok;
                give_string(json, out)
            }
            Err(e) => from_error(e),
        }
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn al_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
