//! C ABI for `hfsurg`.
//!
//! Models and manifolds are opaque heap handles released with their `_free`
//! function. Every fallible call returns an [`HfStatus`]; on failure the
//! message is available from [`hf_last_error_message`] on the same thread.
//! Strings returned through out-parameters are released with
//! [`hf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use hfsurg::gradedalg::Grading;
use hfsurg::knotmodel::KnotSurgeryModel;
use hfsurg::lensd::{lens_d, Slope, SpincIndex};
use hfsurg::surgery::{full_surgery, ManifoldHF};
use hfsurg::Error;

/// Knot surgery model handle.
pub struct HfModel(KnotSurgeryModel);

/// Surgery result handle: `HF⁺` in every Spin^c structure.
pub struct HfManifold(ManifoldHF);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    Domain = 5,
    InsufficientData = 6,
    InconsistentModel = 7,
    NotLSpace = 8,
    Internal = 9,
    Panic = 10,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> HfStatus {
    match e {
        Error::Parse(_) => HfStatus::Parse,
        Error::Validation(_) => HfStatus::Validation,
        Error::Domain(_) | Error::InvalidGrading(_) => HfStatus::Domain,
        Error::InsufficientData(_) => HfStatus::InsufficientData,
        Error::InconsistentModel(_) => HfStatus::InconsistentModel,
        Error::NotLSpaceKnot(_) | Error::NotLSpaceSurgery(_) => HfStatus::NotLSpace,
        Error::WrongDispatch(_) => HfStatus::Internal,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (HfStatus, String)> + UnwindSafe) -> HfStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(f) {
        Ok(Ok(())) => HfStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside hfsurg");
            HfStatus::Panic
        }
    }
}

fn lift(e: Error) -> (HfStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (HfStatus, String) {
    (HfStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (HfStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|e| (HfStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn write_grading(g: Grading, num: *mut i64, den: *mut i64) -> Result<(), (HfStatus, String)> {
    if num.is_null() || den.is_null() {
        return Err(null("grading output"));
    }
    *num = g.numer();
    *den = g.denom();
    Ok(())
}

fn to_c_string(s: String) -> Result<*mut c_char, (HfStatus, String)> {
    CString::new(s).map(CString::into_raw).map_err(|e| (HfStatus::Internal, e.to_string()))
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn hf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses and validates a knot model document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hf_model_from_json(json: *const c_char, out: *mut *mut HfModel) -> HfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = read_str(json, "json")?;
        let model = KnotSurgeryModel::from_json(text).map_err(lift)?;
        model.ensure_valid().map_err(lift)?;
        *out = Box::into_raw(Box::new(HfModel(model)));
        Ok(())
    })
}

/// # Safety
/// `model` must come from [`hf_model_from_json`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hf_model_free(model: *mut HfModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Seifert genus of the model, or 0 for a null handle.
///
/// # Safety
/// `model` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hf_model_genus(model: *const HfModel) -> u32 {
    model.as_ref().map_or(0, |m| m.0.genus())
}

/// `HF⁺(S³_{p/q}(K))` for every Spin^c structure.
///
/// # Safety
/// `model` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hf_surgery(model: *const HfModel, p: i64, q: i64, out: *mut *mut HfManifold) -> HfStatus {
    guard(|| {
        let model = model.as_ref().ok_or_else(|| null("model"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let slope = Slope::new(p, q).map_err(lift)?;
        let y = full_surgery(&model.0, slope).map_err(lift)?;
        *out = Box::into_raw(Box::new(HfManifold(y)));
        Ok(())
    })
}

/// # Safety
/// `manifold` must come from [`hf_surgery`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hf_manifold_free(manifold: *mut HfManifold) {
    if !manifold.is_null() {
        drop(Box::from_raw(manifold));
    }
}

/// Number of Spin^c structures listed, or 0 for a null handle.
///
/// # Safety
/// `manifold` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hf_manifold_spinc_count(manifold: *const HfManifold) -> usize {
    manifold.as_ref().map_or(0, |m| m.0.structures.len())
}

/// # Safety
/// `manifold` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hf_manifold_total_reduced_dim(manifold: *const HfManifold) -> u64 {
    manifold.as_ref().map_or(0, |m| m.0.total_reduced_dim)
}

/// # Safety
/// `manifold` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hf_manifold_is_lspace(manifold: *const HfManifold) -> bool {
    manifold.as_ref().is_some_and(|m| m.0.is_lspace())
}

/// d-invariant of the `slot`-th listed structure as `num/den`.
/// Fails with `Domain` for a structure without one (zero surgery, `k ≠ 0`).
///
/// # Safety
/// `manifold` must be a live handle; `num` and `den` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hf_manifold_d_invariant(
    manifold: *const HfManifold,
    slot: usize,
    num: *mut i64,
    den: *mut i64,
) -> HfStatus {
    guard(|| {
        let m = manifold.as_ref().ok_or_else(|| null("manifold"))?;
        let st = m.0.structures.get(slot).ok_or_else(|| {
            (HfStatus::Domain, format!("slot {slot} out of range (0..{})", m.0.structures.len()))
        })?;
        let d = st.d.ok_or_else(|| (HfStatus::Domain, format!("structure {} has no d-invariant", st.index)))?;
        write_grading(d, num, den)
    })
}

/// Manifold document as JSON; free with [`hf_string_free`].
///
/// # Safety
/// `manifold` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hf_manifold_to_json(manifold: *const HfManifold, out: *mut *mut c_char) -> HfStatus {
    guard(|| {
        let m = manifold.as_ref().ok_or_else(|| null("manifold"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = to_c_string(hfsurg::io::manifold_to_json(&m.0))?;
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn hf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `d(L(p,q), i)` as `num/den`.
///
/// # Safety
/// `num` and `den` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hf_lens_d(p: i64, q: i64, i: i64, num: *mut i64, den: *mut i64) -> HfStatus {
    guard(|| {
        let d = lens_d(p, q, SpincIndex(i)).map_err(lift)?;
        write_grading(d, num, den)
    })
}
