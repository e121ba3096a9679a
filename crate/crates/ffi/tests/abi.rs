use std::ffi::{CStr, CString};
use std::ptr;

use eisdepth_ffi::*;

fn engine() -> *mut EisdepthEngine {
    let mut e = ptr::null_mut();
    let s = unsafe { eisdepth_engine_new(ptr::null(), 1, 1, &mut e) };
    assert_eq!(s, EisdepthStatus::Ok);
    assert!(!e.is_null());
    e
}

fn last_error() -> String {
    let p = eisdepth_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn compute_level_66() {
    let e = engine();
    let mut r = ptr::null_mut();
    unsafe {
        assert_eq!(eisdepth_compute(e, 66, 5, 0, 1, &mut r), EisdepthStatus::Ok);
        assert_eq!(eisdepth_report_depth(r), 2);
        assert_eq!(eisdepth_report_val_phi(r), 1);
        assert_eq!(eisdepth_report_val_index(r), 1);
        assert_eq!(eisdepth_report_minimal_generators(r), 2);
        assert_eq!(eisdepth_report_failed_checks(r), 0);
        let n = eisdepth_report_record_count(r);
        assert_eq!(n, 2);
        let mut levels = Vec::new();
        for i in 0..n {
            let mut rec = EisdepthRecord::default();
            assert_eq!(eisdepth_report_record(r, i, &mut rec), EisdepthStatus::Ok);
            assert_eq!((rec.r, rec.e, rec.residue_field_size), (1, 1, 5));
            levels.push(rec.level);
        }
        levels.sort_unstable();
        assert_eq!(levels, [11, 66]);

        let mut rec = EisdepthRecord::default();
        assert_eq!(eisdepth_report_record(r, n, &mut rec), EisdepthStatus::OutOfRange);

        let mut js = ptr::null_mut();
        assert_eq!(eisdepth_report_json(r, &mut js), EisdepthStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(js).to_str().unwrap()).unwrap();
        assert_eq!(v["depth"], 2);
        assert_eq!(v["level"], 66);
        eisdepth_string_free(js);
        eisdepth_report_free(r);
        eisdepth_engine_free(e);
    }
}

#[test]
fn no_index_reports_minus_one() {
    let e = engine();
    let mut r = ptr::null_mut();
    unsafe {
        assert_eq!(eisdepth_compute(e, 55, 5, 0, 0, &mut r), EisdepthStatus::Ok);
        assert_eq!(eisdepth_report_val_index(r), -1);
        assert_eq!(eisdepth_report_minimal_generators(r), -1);
        assert_eq!(eisdepth_report_depth(r), 1);
        eisdepth_report_free(r);
        eisdepth_engine_free(e);
    }
}

#[test]
fn invalid_arguments() {
    let e = engine();
    let mut r = ptr::null_mut();
    unsafe {
        assert_eq!(eisdepth_compute(e, 12, 5, 0, 0, &mut r), EisdepthStatus::InvalidArgument);
        assert!(r.is_null());
        assert!(last_error().contains("12"));
        assert_eq!(eisdepth_compute(e, 11, 2, 0, 0, &mut r), EisdepthStatus::InvalidArgument);
        assert_eq!(eisdepth_compute(e, 11, 9, 0, 0, &mut r), EisdepthStatus::InvalidArgument);
        eisdepth_engine_free(e);
    }
}

#[test]
fn null_pointers() {
    let mut r = ptr::null_mut();
    unsafe {
        assert_eq!(eisdepth_compute(ptr::null_mut(), 11, 5, 0, 0, &mut r), EisdepthStatus::NullPointer);
        assert_eq!(last_error(), "engine is null");
        assert_eq!(eisdepth_engine_new(ptr::null(), 1, 1, ptr::null_mut()), EisdepthStatus::NullPointer);
        assert_eq!(eisdepth_report_depth(ptr::null()), 0);
        assert_eq!(eisdepth_report_record_count(ptr::null()), 0);
        assert_eq!(eisdepth_sturm_bound(11, ptr::null_mut()), EisdepthStatus::NullPointer);
        eisdepth_report_free(ptr::null_mut());
        eisdepth_engine_free(ptr::null_mut());
        eisdepth_string_free(ptr::null_mut());
    }
}

#[test]
fn cache_dir_engine() {
    let dir = tempfile::tempdir().unwrap();
    let path = CString::new(dir.path().to_str().unwrap()).unwrap();
    let mut e = ptr::null_mut();
    unsafe {
        assert_eq!(eisdepth_engine_new(path.as_ptr(), 7, 0, &mut e), EisdepthStatus::Ok);
        let mut r = ptr::null_mut();
        assert_eq!(eisdepth_compute(e, 11, 5, 0, 0, &mut r), EisdepthStatus::Ok);
        assert_eq!(eisdepth_report_depth(r), 1);
        eisdepth_report_free(r);
        eisdepth_engine_free(e);
    }
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
}

#[test]
fn sturm_and_toy() {
    let mut b = 0;
    unsafe {
        assert_eq!(eisdepth_sturm_bound(11, &mut b), EisdepthStatus::Ok);
    }
    assert_eq!(b, 22);
    let (mut passed, mut total) = (0, 0);
    unsafe {
        assert_eq!(eisdepth_toy_verify(1, 20, &mut passed, &mut total), EisdepthStatus::Ok);
    }
    assert_eq!(total, 23);
    assert_eq!(passed, total);
}
