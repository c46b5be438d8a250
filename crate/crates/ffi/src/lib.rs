//! C interface to `silting-core`.
//!
//! Algebras and complexes are opaque handles owned by the caller and
//! released with the matching `*_free`. Every fallible call returns a
//! [`SiltStatus`]; on failure [`silt_last_error`] describes the problem.
//! Strings returned by the library are freed with [`silt_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use silting_core::algebra::{AlgebraError, Lambda, Vertex};
use silting_core::complexes::{hom_dim, minimize, ComplexError, ProjComplex};
use silting_core::equiv::{nakayama_nu, reduce_to_two_term, EquivError, NuDirection};
use silting_core::silting::{flags, SiltingError};

/// `Λ^{p,q}`.
pub struct SiltAlgebra(Lambda);

/// A bounded complex of projective `Λ^{p,q}`-modules.
pub struct SiltComplex(ProjComplex);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SiltStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    MalformedJson = 3,
    NotAComplex = 4,
    BlockShape = 5,
    InvalidAlgebra = 6,
    AlgebraMismatch = 7,
    NotTilting = 8,
    Failed = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SiltFlags {
    pub presilting: bool,
    pub silting: bool,
    pub tilting: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(SiltStatus, String);

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Failure {
        let s = match e {
            ComplexError::Parse(_) => SiltStatus::MalformedJson,
            ComplexError::NotAComplex(_) => SiltStatus::NotAComplex,
            ComplexError::Shape(_) | ComplexError::Misplaced(_) => SiltStatus::BlockShape,
            ComplexError::AlgebraMismatch => SiltStatus::AlgebraMismatch,
            _ => SiltStatus::Failed,
        };
        Failure(s, e.to_string())
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Failure {
        Failure(SiltStatus::InvalidAlgebra, e.to_string())
    }
}

impl From<SiltingError> for Failure {
    fn from(e: SiltingError) -> Failure {
        match e {
            SiltingError::Complex(c) => c.into(),
            e => Failure(SiltStatus::Failed, e.to_string()),
        }
    }
}

impl From<EquivError> for Failure {
    fn from(e: EquivError) -> Failure {
        match e {
            EquivError::Complex(c) => c.into(),
            EquivError::NotTilting => Failure(SiltStatus::NotTilting, e.to_string()),
            e => Failure(SiltStatus::Failed, e.to_string()),
        }
    }
}

fn null() -> Failure {
    Failure(SiltStatus::NullPointer, "null pointer argument".into())
}

/// Runs `f`, records the error message and turns panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SiltStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SiltStatus::Ok
        }
        Ok(Err(Failure(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            SiltStatus::Panic
        }
    }
}

unsafe fn as_ref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn silt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn silt_algebra_new(
    p: usize,
    q: usize,
    out: *mut *mut SiltAlgebra,
) -> SiltStatus {
    guard(|| store(out, SiltAlgebra(Lambda::new(p, q)?)))
}

/// # Safety
/// `a` must come from [`silt_algebra_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn silt_algebra_free(a: *mut SiltAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Dimension of `Λ^{p,q}`, or 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn silt_algebra_dim(a: *const SiltAlgebra) -> usize {
    a.as_ref().map_or(0, |a| a.0.dim())
}

/// Writes the Cartan matrix row by row into `out[0..4]`.
///
/// # Safety
/// `a` must be a live handle and `out` valid for four writes.
#[no_mangle]
pub unsafe extern "C" fn silt_algebra_cartan(a: *const SiltAlgebra, out: *mut usize) -> SiltStatus {
    guard(|| {
        let c = as_ref(a)?.0.cartan_matrix();
        if out.is_null() {
            return Err(null());
        }
        for (k, v) in c.iter().flatten().enumerate() {
            *out.add(k) = *v;
        }
        Ok(())
    })
}

/// Parses the JSON interchange format; `d ∘ d = 0` is checked.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn silt_complex_from_json(
    json: *const c_char,
    out: *mut *mut SiltComplex,
) -> SiltStatus {
    guard(|| {
        if json.is_null() {
            return Err(null());
        }
        let s = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Failure(SiltStatus::InvalidUtf8, e.to_string()))?;
        store(out, SiltComplex(ProjComplex::from_json(s)?))
    })
}

/// The stalk complex `P_vertex` (vertex 1 or 2) in the given degree.
///
/// # Safety
/// `a` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn silt_complex_projective(
    a: *const SiltAlgebra,
    vertex: u32,
    degree: i32,
    out: *mut *mut SiltComplex,
) -> SiltStatus {
    guard(|| {
        let l = as_ref(a)?.0;
        let v = match vertex {
            1 => Vertex::One,
            2 => Vertex::Two,
            _ => {
                return Err(Failure(
                    SiltStatus::Failed,
                    format!("vertex {vertex} is not 1 or 2"),
                ))
            }
        };
        store(out, SiltComplex(ProjComplex::projective(l, v, degree)))
    })
}

/// `Λ = P_1 ⊕ P_2` in degree 0.
///
/// # Safety
/// `a` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn silt_complex_regular(
    a: *const SiltAlgebra,
    out: *mut *mut SiltComplex,
) -> SiltStatus {
    guard(|| store(out, SiltComplex(ProjComplex::regular(as_ref(a)?.0))))
}

/// # Safety
/// `c` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn silt_complex_free(c: *mut SiltComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// The complex as JSON; free the result with [`silt_string_free`]. Null on
/// a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn silt_complex_to_json(c: *const SiltComplex) -> *mut c_char {
    match c.as_ref() {
        Some(c) => CString::new(c.0.to_json()).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn silt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Writes `[lo, hi]`; an empty complex gives `lo > hi`.
///
/// # Safety
/// `c` must be a live handle and `lo`, `hi` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn silt_complex_degrees(
    c: *const SiltComplex,
    lo: *mut i32,
    hi: *mut i32,
) -> SiltStatus {
    guard(|| {
        let c = &as_ref(c)?.0;
        if lo.is_null() || hi.is_null() {
            return Err(null());
        }
        (*lo, *hi) = if c.is_zero() {
            (0, -1)
        } else {
            (c.lo(), c.hi())
        };
        Ok(())
    })
}

/// # Safety
/// `c` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn silt_complex_minimize(
    c: *const SiltComplex,
    out: *mut *mut SiltComplex,
) -> SiltStatus {
    guard(|| store(out, SiltComplex(minimize(&as_ref(c)?.0))))
}

/// # Safety
/// `c` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn silt_complex_flags(
    c: *const SiltComplex,
    out: *mut SiltFlags,
) -> SiltStatus {
    guard(|| {
        let (f, _) = flags(&as_ref(c)?.0)?;
        if out.is_null() {
            return Err(null());
        }
        *out = SiltFlags {
            presilting: f.presilting,
            silting: f.silting,
            tilting: f.tilting,
        };
        Ok(())
    })
}

/// `dim Hom_K(x, y[shift])`.
///
/// # Safety
/// `x`, `y` must be live handles and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn silt_hom_dim(
    x: *const SiltComplex,
    y: *const SiltComplex,
    shift: i32,
    out: *mut usize,
) -> SiltStatus {
    guard(|| {
        let d = hom_dim(&as_ref(x)?.0, &as_ref(y)?.0, shift)?;
        if out.is_null() {
            return Err(null());
        }
        *out = d;
        Ok(())
    })
}

/// The Nakayama functor `ν`, or `ν^{-1}` when `inverse` is set.
///
/// # Safety
/// `c` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn silt_nakayama(
    c: *const SiltComplex,
    inverse: bool,
    out: *mut *mut SiltComplex,
) -> SiltStatus {
    guard(|| {
        let dir = if inverse {
            NuDirection::Inverse
        } else {
            NuDirection::Forward
        };
        store(out, SiltComplex(nakayama_nu(&as_ref(c)?.0, dir)?))
    })
}

/// A two-term complex isomorphic to `ν^m(c)`, with `m` written to `m_out`.
///
/// # Safety
/// `c` must be a live handle; `out` and `m_out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn silt_reduce(
    c: *const SiltComplex,
    max_steps: usize,
    out: *mut *mut SiltComplex,
    m_out: *mut i64,
) -> SiltStatus {
    guard(|| {
        let r = reduce_to_two_term(&as_ref(c)?.0, max_steps)?;
        if m_out.is_null() {
            return Err(null());
        }
        store(out, SiltComplex(r.complex))?;
        *m_out = r.m;
        Ok(())
    })
}
