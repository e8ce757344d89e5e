use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use bloch_essnorm_ffi::*;

fn last_error() -> String {
    let p = bloch_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn symbol(spec: &str) -> *mut BlochSymbol {
    let spec = CString::new(spec).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { bloch_symbol_parse(spec.as_ptr(), &mut out) }, BlochStatus::Ok);
    out
}

#[test]
fn closed_forms() {
    let mut v = 0.0;
    assert_eq!(unsafe { bloch_znbar_norm(2, 1.0, &mut v) }, BlochStatus::Ok);
    assert!((v - 1.539_600_717_839_001_7).abs() < 1e-15);
    assert_eq!(unsafe { bloch_band_limit(1.0, &mut v) }, BlochStatus::Ok);
    assert!((v - 2.0 / std::f64::consts::E).abs() < 1e-15);
    let mut e = BlochExtremals::default();
    assert_eq!(unsafe { bloch_extremals(1, 3.0, &mut e) }, BlochStatus::Ok);
    assert_eq!((e.peak_radius, e.peak_value), (0.0, 1.0));
    assert_eq!(unsafe { bloch_extremals(0, 1.0, &mut e) }, BlochStatus::Domain);
    assert_eq!(unsafe { bloch_band_limit(-1.0, &mut v) }, BlochStatus::Domain);
    assert!(last_error().contains("alpha"));
}

#[test]
fn symbol_handles() {
    let s = symbol("automorphism a=0.5+0i");
    let mut v = 0.0;
    assert_eq!(unsafe { bloch_ratio_at(s, 1.0, 0.3, -0.7, &mut v) }, BlochStatus::Ok);
    assert!((v - 1.0).abs() < 1e-10);
    assert_eq!(unsafe { bloch_ratio_at(s, 1.0, 1.5, 0.0, &mut v) }, BlochStatus::Domain);
    let mut e = BlochEssNorm::default();
    let sampling = BlochSampling { radial_levels: 30, ..bloch_sampling_default() };
    assert_eq!(unsafe { bloch_essnorm(s, 1.0, &sampling, 512, &mut e) }, BlochStatus::Ok);
    assert!((e.e1 - 1.0).abs() < 1e-3 && (e.e2 - 1.0).abs() < 1e-3 && (e.e3 - 1.0).abs() < 0.05);
    unsafe { bloch_symbol_free(s) };
    unsafe { bloch_symbol_free(ptr::null_mut()) };
}

#[test]
fn function_handles() {
    let spec = CString::new("znbar n=2").unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { bloch_function_parse(spec.as_ptr(), &mut f) }, BlochStatus::Ok);
    let mut v = 0.0;
    assert_eq!(unsafe { bloch_norm(f, 1.0, ptr::null(), &mut v) }, BlochStatus::Ok);
    assert!((v - 1.539_600_717_839_001_7).abs() < 1e-9);
    unsafe { bloch_function_free(f) };
}

#[test]
fn errors_are_reported() {
    let mut out = ptr::null_mut();
    let bad = CString::new("poly coeffs=[0, 2]").unwrap();
    assert_eq!(unsafe { bloch_symbol_parse(bad.as_ptr(), &mut out) }, BlochStatus::SelfMapViolation);
    assert!(out.is_null());
    assert!(last_error().contains("self-map"));
    let bad = CString::new("hexagon k=3").unwrap();
    assert_eq!(unsafe { bloch_symbol_parse(bad.as_ptr(), &mut out) }, BlochStatus::Parse);
    assert_eq!(unsafe { bloch_symbol_parse(ptr::null(), &mut out) }, BlochStatus::NullPointer);
    let ok = CString::new("identity").unwrap();
    assert_eq!(unsafe { bloch_symbol_parse(ok.as_ptr(), ptr::null_mut()) }, BlochStatus::NullPointer);
    let mut v = 0.0;
    assert_eq!(unsafe { bloch_norm(ptr::null(), 1.0, ptr::null(), &mut v) }, BlochStatus::NullPointer);
}

#[test]
fn header_is_valid_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/bloch_essnorm.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["bloch_symbol_parse", "bloch_symbol_free", "bloch_essnorm", "bloch_last_error", "BLOCH_STATUS_OK"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Ok(status) = Command::new("cc").args(["-fsyntax-only", "-x", "c"]).arg(&header).status() else {
        eprintln!("no C compiler; skipping syntax check");
        return;
    };
    assert!(status.success());
}
