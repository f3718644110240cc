use std::ffi::{CStr, CString};
use std::ptr;

use hfsurg_ffi::*;

fn k0_json() -> CString {
    CString::new(hfsurg::catalog::teragaito_knot(0).to_json()).unwrap()
}

fn last_error() -> String {
    let p = hf_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn teragaito_through_the_c_abi() {
    unsafe {
        let mut model = ptr::null_mut();
        assert_eq!(hf_model_from_json(k0_json().as_ptr(), &mut model), HfStatus::Ok);
        assert!(hf_last_error_message().is_null());
        assert_eq!(hf_model_genus(model), 2);
        let mut y = ptr::null_mut();
        assert_eq!(hf_surgery(model, -4, 1, &mut y), HfStatus::Ok);
        assert_eq!(hf_manifold_spinc_count(y), 4);
        assert_eq!(hf_manifold_total_reduced_dim(y), 2);
        assert!(!hf_manifold_is_lspace(y));
        let (mut n, mut d) = (0, 0);
        assert_eq!(hf_manifold_d_invariant(y, 0, &mut n, &mut d), HfStatus::Ok);
        assert_eq!((n, d), (-3, 4));
        let mut json = ptr::null_mut();
        assert_eq!(hf_manifold_to_json(y, &mut json), HfStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        hf_string_free(json);
        let back = hfsurg::io::manifold_from_json(&text).unwrap();
        assert_eq!(back.total_reduced_dim, 2);
        hf_manifold_free(y);
        hf_model_free(model);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut model = ptr::null_mut();
        let bad = CString::new("{not json").unwrap();
        assert_eq!(hf_model_from_json(bad.as_ptr(), &mut model), HfStatus::Parse);
        assert!(model.is_null());
        assert!(last_error().contains("parse"));

        assert_eq!(hf_model_from_json(ptr::null(), &mut model), HfStatus::NullPointer);
        assert_eq!(hf_model_from_json(k0_json().as_ptr(), ptr::null_mut()), HfStatus::NullPointer);

        assert_eq!(hf_model_from_json(k0_json().as_ptr(), &mut model), HfStatus::Ok);
        let mut y = ptr::null_mut();
        assert_eq!(hf_surgery(model, 4, 0, &mut y), HfStatus::Domain);
        assert!(y.is_null());
        assert_eq!(hf_surgery(model, 0, 1, &mut y), HfStatus::Ok);
        let (mut n, mut d) = (0, 0);
        assert_eq!(hf_manifold_d_invariant(y, 0, &mut n, &mut d), HfStatus::Domain);
        assert!(last_error().contains("no d-invariant"));
        assert_eq!(hf_manifold_d_invariant(y, 99, &mut n, &mut d), HfStatus::Domain);
        hf_manifold_free(y);
        hf_model_free(model);
    }
}

#[test]
fn invalid_models_are_rejected() {
    let mut m = hfsurg::catalog::trefoil();
    m.vh = hfsurg::knotmodel::VHData::zeros(1);
    let json = CString::new(m.to_json()).unwrap();
    let mut model = ptr::null_mut();
    assert_eq!(unsafe { hf_model_from_json(json.as_ptr(), &mut model) }, HfStatus::Validation);
    assert!(model.is_null());
}

#[test]
fn null_handles_are_harmless() {
    unsafe {
        hf_model_free(ptr::null_mut());
        hf_manifold_free(ptr::null_mut());
        hf_string_free(ptr::null_mut());
        assert_eq!(hf_model_genus(ptr::null()), 0);
        assert_eq!(hf_manifold_spinc_count(ptr::null()), 0);
        let mut y = ptr::null_mut();
        assert_eq!(hf_surgery(ptr::null(), 1, 1, &mut y), HfStatus::NullPointer);
    }
}

#[test]
fn lens_d_values() {
    let (mut n, mut d) = (0, 0);
    assert_eq!(unsafe { hf_lens_d(5, 1, 0, &mut n, &mut d) }, HfStatus::Ok);
    assert_eq!((n, d), (1, 1));
    assert_eq!(unsafe { hf_lens_d(-5, 1, 0, &mut n, &mut d) }, HfStatus::Ok);
    assert_eq!((n, d), (-1, 1));
    assert_eq!(unsafe { hf_lens_d(5, 1, 7, &mut n, &mut d) }, HfStatus::Domain);
}
