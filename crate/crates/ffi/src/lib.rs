//! C ABI over `qdinfo`.
//!
//! Every fallible call returns a [`QdStatus`]; on failure the message is
//! kept per thread and can be fetched with [`qd_last_error`]. States are
//! opaque handles owned by the caller and released with [`qd_state_free`].
//! Quantities undefined for a given input (cyclotron-unit energies at zero
//! field, Neumann `rms_k_bar`) are returned as NaN.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qdinfo::measures::measures;
use qdinfo::numerics::QuadratureSpec;
use qdinfo::spectrum::{eigenvalue_default, find_crossing_bc, BoundarySpec, FieldStrength, LevelId};
use qdinfo::wavefn::{build_state, RadialState};
use qdinfo::Error;

/// Wall condition codes.
pub const QD_DIRICHLET: i32 = 0;
pub const QD_NEUMANN: i32 = 1;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NoConvergence = 3,
    RootNotFound = 4,
    NoCrossing = 5,
    Numerical = 6,
    Panic = 7,
}

/// Opaque eigenstate with its position and momentum functions.
pub struct QdState {
    inner: RadialState,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct QdEnergy {
    pub e_bar: f64,
    pub e_bbar: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct QdCrossing {
    pub b_star: f64,
    pub e_bar: f64,
    pub e_bbar: f64,
}

/// Measures in electric (`_bar`) and magnetic (`_bbar`) units.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct QdMeasures {
    pub s_rho_bar: f64,
    pub s_gamma_bar: f64,
    pub s_rho_bbar: f64,
    pub s_gamma_bbar: f64,
    pub s_total: f64,
    pub i_rho_bar: f64,
    pub i_gamma_bar: f64,
    pub i_rho_bbar: f64,
    pub i_gamma_bbar: f64,
    pub i_product: f64,
    pub o_rho_bar: f64,
    pub o_gamma_bar: f64,
    pub o_rho_bbar: f64,
    pub o_gamma_bbar: f64,
    pub o_product: f64,
    pub rms_r_bar: f64,
    pub rms_k_bar: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> QdStatus {
    match e {
        Error::AtPoint { source, .. } => status_of(source),
        Error::ParameterDomain(_) | Error::Config(_) => QdStatus::InvalidArgument,
        Error::NonConvergence { .. } => QdStatus::NoConvergence,
        Error::RootNotFound { .. } | Error::InvalidBracket { .. } => QdStatus::RootNotFound,
        Error::NoCrossing { .. } => QdStatus::NoCrossing,
        _ => QdStatus::Numerical,
    }
}

/// Run `f`, translating errors and panics into status codes.
fn guard<F: FnOnce() -> Result<(), QdError>>(f: F) -> QdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QdStatus::Ok,
        Ok(Err(QdError::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            QdStatus::NullPointer
        }
        Ok(Err(QdError::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            QdStatus::Panic
        }
    }
}

enum QdError {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for QdError {
    fn from(e: Error) -> Self {
        QdError::Lib(e)
    }
}

fn boundary(bc: i32) -> Result<BoundarySpec, QdError> {
    match bc {
        QD_DIRICHLET => Ok(BoundarySpec::Dirichlet),
        QD_NEUMANN => Ok(BoundarySpec::Neumann),
        other => Err(Error::ParameterDomain(format!("unknown wall condition code {other}")).into()),
    }
}

fn level(n: u32, m: i32) -> LevelId {
    LevelId::new(n, m)
}

fn nan_if_none(x: Option<f64>) -> f64 {
    x.unwrap_or(f64::NAN)
}

/// Eigenvalue of level `(n, m)` at field `b_bar`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qd_eigenvalue(bc: i32, n: u32, m: i32, b_bar: f64, out: *mut QdEnergy) -> QdStatus {
    guard(|| {
        let out = unsafe { out.as_mut() }.ok_or(QdError::Null("out"))?;
        let e = eigenvalue_default(boundary(bc)?, level(n, m), FieldStrength::new(b_bar)?)?;
        *out = QdEnergy {
            e_bar: e.e_bar,
            e_bbar: nan_if_none(e.e_bbar),
        };
        Ok(())
    })
}

/// Solve and build the state `(n, m)` at `b_bar`. The handle is written to
/// `*out` and must be released with [`qd_state_free`].
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qd_state_new(bc: i32, n: u32, m: i32, b_bar: f64, out: *mut *mut QdState) -> QdStatus {
    guard(|| {
        let out = unsafe { out.as_mut() }.ok_or(QdError::Null("out"))?;
        *out = ptr::null_mut();
        let e = eigenvalue_default(boundary(bc)?, level(n, m), FieldStrength::new(b_bar)?)?;
        let inner = build_state(&e, &QuadratureSpec::measures())?;
        *out = Box::into_raw(Box::new(QdState { inner }));
        Ok(())
    })
}

/// Release a state; null is ignored.
///
/// # Safety
/// `state` must be null or a handle from [`qd_state_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qd_state_free(state: *mut QdState) {
    if !state.is_null() {
        drop(unsafe { Box::from_raw(state) });
    }
}

/// Radial position function at `r` in units of the dot radius (zero outside).
///
/// # Safety
/// `state` must be a live handle or null; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qd_state_position(state: *const QdState, r: f64, out: *mut f64) -> QdStatus {
    guard(|| {
        let s = unsafe { state.as_ref() }.ok_or(QdError::Null("state"))?;
        let out = unsafe { out.as_mut() }.ok_or(QdError::Null("out"))?;
        if !(r >= 0.0) {
            return Err(Error::ParameterDomain(format!("radius must be non-negative, got {r}")).into());
        }
        *out = s.inner.position(r);
        Ok(())
    })
}

/// Radial momentum function at `k`.
///
/// # Safety
/// `state` must be a live handle or null; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qd_state_momentum(state: *const QdState, k: f64, out: *mut f64) -> QdStatus {
    guard(|| {
        let s = unsafe { state.as_ref() }.ok_or(QdError::Null("state"))?;
        let out = unsafe { out.as_mut() }.ok_or(QdError::Null("out"))?;
        if !(k >= 0.0) {
            return Err(Error::ParameterDomain(format!("momentum must be non-negative, got {k}")).into());
        }
        *out = s.inner.momentum(k)?;
        Ok(())
    })
}

/// All information measures of a state.
///
/// # Safety
/// `state` must be a live handle or null; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qd_state_measures(state: *const QdState, out: *mut QdMeasures) -> QdStatus {
    guard(|| {
        let s = unsafe { state.as_ref() }.ok_or(QdError::Null("state"))?;
        let out = unsafe { out.as_mut() }.ok_or(QdError::Null("out"))?;
        let m = measures(&s.inner, &QuadratureSpec::measures())?;
        *out = QdMeasures {
            s_rho_bar: m.s_rho_bar,
            s_gamma_bar: m.s_gamma_bar,
            s_rho_bbar: nan_if_none(m.s_rho_bbar),
            s_gamma_bbar: nan_if_none(m.s_gamma_bbar),
            s_total: m.s_total,
            i_rho_bar: m.i_rho_bar,
            i_gamma_bar: m.i_gamma_bar,
            i_rho_bbar: nan_if_none(m.i_rho_bbar),
            i_gamma_bbar: nan_if_none(m.i_gamma_bbar),
            i_product: m.i_product,
            o_rho_bar: m.o_rho_bar,
            o_gamma_bar: m.o_gamma_bar,
            o_rho_bbar: nan_if_none(m.o_rho_bbar),
            o_gamma_bbar: nan_if_none(m.o_gamma_bbar),
            o_product: m.o_product,
            rms_r_bar: m.rms_r_bar,
            rms_k_bar: nan_if_none(m.rms_k_bar),
        };
        Ok(())
    })
}

/// Field where level `(n, m)` meets `(n, m-1)`, for `m <= 0`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qd_find_crossing(bc: i32, n: u32, m: i32, out: *mut QdCrossing) -> QdStatus {
    guard(|| {
        let out = unsafe { out.as_mut() }.ok_or(QdError::Null("out"))?;
        let c = find_crossing_bc(boundary(bc)?, n, m, 1e-10)?;
        *out = QdCrossing {
            b_star: c.b_star,
            e_bar: c.e_bar,
            e_bbar: c.e_bbar,
        };
        Ok(())
    })
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn qd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copy the calling thread's last error message into `buf` (truncated and
/// always nul-terminated when `len > 0`). Returns the full message length
/// excluding the terminator, or 0 when there is none.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes of writes.
#[no_mangle]
pub unsafe extern "C" fn qd_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else {
            if !buf.is_null() && len > 0 {
                unsafe { *buf = 0 };
            }
            return 0;
        };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            unsafe {
                ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
                *buf.add(n) = 0;
            }
        }
        bytes.len()
    })
}
