//! Exercises the C surface from Rust: the happy path through classify /
//! du / point counts, every error path a C caller can hit, and a syntax
//! check of the generated header.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use apnforge_ffi::*;

fn field(m: u32) -> *mut ApnForgeField {
    let mut out = ptr::null_mut();
    let status = unsafe { apnforge_field_new(m, &mut out) };
    assert_eq!(status, ApnForgeStatus::Ok);
    assert!(!out.is_null());
    out
}

fn binomial(f: *const ApnForgeField, i: u32, s: u32, t: u32, delta: &str) -> *mut ApnForgeBinomial {
    let delta = CString::new(delta).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { apnforge_binomial_new(f, i, s, t, delta.as_ptr(), &mut out) };
    assert_eq!(status, ApnForgeStatus::Ok);
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(apnforge_last_error()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn classify_du_and_counts_agree_through_the_c_surface() {
    let modulus = CString::new("0x409").unwrap();
    let mut f = ptr::null_mut();
    let status = unsafe { apnforge_field_new_with_modulus(10, modulus.as_ptr(), &mut f) };
    assert_eq!(status, ApnForgeStatus::Ok);
    assert_eq!(unsafe { apnforge_field_degree(f) }, 10);

    let b = binomial(f, 1, 2, 3, "a^374");

    let mut du = 0u64;
    assert_eq!(
        unsafe { apnforge_differential_uniformity(b, &mut du) },
        ApnForgeStatus::Ok
    );
    assert_eq!(du, 2);

    let mut count = u64::MAX;
    assert_eq!(
        unsafe { apnforge_count_points(b, 1, &mut count) },
        ApnForgeStatus::Ok
    );
    assert_eq!(count, 0, "an APN function has no off-diagonal zeros");

    let mut json: *mut c_char = ptr::null_mut();
    assert_eq!(
        unsafe { apnforge_classify_json(b, 0, 0, &mut json) },
        ApnForgeStatus::Ok
    );
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap();
    let report: serde_json::Value = serde_json::from_str(text).unwrap();
    assert_eq!(report["verdict"], "NotAPNInfinitelyOften");
    assert_eq!(report["h_degree"], 33);
    unsafe { apnforge_string_free(json) };

    unsafe {
        apnforge_binomial_free(b);
        apnforge_field_free(f);
    }
}

#[test]
fn normalization_lands_on_the_same_normal_form() {
    let f = field(6);
    let c1 = CString::new("a^5").unwrap();
    let c2 = CString::new("a^3").unwrap();
    let mut raw = ptr::null_mut();
    let status =
        unsafe { apnforge_binomial_normalize(f, c1.as_ptr(), 40, c2.as_ptr(), 6, &mut raw) };
    assert_eq!(status, ApnForgeStatus::Ok);

    let mut du_raw = 0u64;
    assert_eq!(
        unsafe { apnforge_differential_uniformity(raw, &mut du_raw) },
        ApnForgeStatus::Ok
    );

    // The normal form computed directly must behave identically.
    let direct = binomial(f, 1, 2, 2, "0x2");
    let mut du_direct = 0u64;
    assert_eq!(
        unsafe { apnforge_differential_uniformity(direct, &mut du_direct) },
        ApnForgeStatus::Ok
    );
    assert_eq!(du_raw, du_direct);

    unsafe {
        apnforge_binomial_free(raw);
        apnforge_binomial_free(direct);
        apnforge_field_free(f);
    }
}

#[test]
fn every_error_path_sets_a_message() {
    // Null out-parameter.
    assert_eq!(
        unsafe { apnforge_field_new(4, ptr::null_mut()) },
        ApnForgeStatus::NullArgument
    );
    assert!(!last_error().is_empty());

    // Unparseable element.
    let f = field(4);
    let bad = CString::new("not-an-element").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { apnforge_binomial_new(f, 1, 1, 2, bad.as_ptr(), &mut out) },
        ApnForgeStatus::InvalidInput
    );
    assert!(last_error().contains("not-an-element"));

    // Zero delta is rejected as degenerate.
    let zero = CString::new("0x0").unwrap();
    assert_eq!(
        unsafe { apnforge_binomial_new(f, 1, 1, 2, zero.as_ptr(), &mut out) },
        ApnForgeStatus::InvalidInput
    );

    // Null handle.
    let mut du = 0u64;
    assert_eq!(
        unsafe { apnforge_differential_uniformity(ptr::null(), &mut du) },
        ApnForgeStatus::NullArgument
    );

    // An enumeration past the desk-scale cap is refused, not attempted.
    let big = field(13);
    let delta = CString::new("0x3").unwrap();
    let mut b = ptr::null_mut();
    assert_eq!(
        unsafe { apnforge_binomial_new(big, 1, 1, 2, delta.as_ptr(), &mut b) },
        ApnForgeStatus::Ok
    );
    let mut count = 0u64;
    assert_eq!(
        unsafe { apnforge_count_points(b, 2, &mut count) },
        ApnForgeStatus::CapExceeded
    );
    assert!(last_error().contains("2^26"));

    unsafe {
        apnforge_binomial_free(b);
        apnforge_field_free(big);
        apnforge_field_free(f);
    }

    // Frees ignore null.
    unsafe {
        apnforge_field_free(ptr::null_mut());
        apnforge_binomial_free(ptr::null_mut());
        apnforge_string_free(ptr::null_mut());
    }
}

#[test]
fn generated_header_is_valid_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/apnforge.h");
    assert!(
        std::path::Path::new(header).exists(),
        "build script should emit the header"
    );
    match std::process::Command::new("cc")
        .args(["-std=c99", "-fsyntax-only", "-x", "c", header])
        .status()
    {
        Ok(status) => assert!(status.success(), "header fails to compile as C99"),
        Err(_) => eprintln!("no C compiler available; skipping the syntax check"),
    }
}
