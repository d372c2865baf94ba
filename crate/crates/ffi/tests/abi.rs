use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use pascal_invariants_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    pinv_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(pinv_last_error()).to_string_lossy().into_owned()
}

#[test]
fn sequences_round_trip() {
    unsafe {
        let mut fib = ptr::null_mut();
        assert_eq!(pinv_seq_parse(cs("fib").as_ptr(), &mut fib), PinvStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(pinv_seq_term(fib, 12, &mut s), PinvStatus::Ok);
        assert_eq!(take(s), "144");
        assert_eq!(pinv_seq_prefix_json(fib, 3, &mut s), PinvStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v[2]["num"], "1");

        let mut verdict = PinvVerdict::Neither;
        assert_eq!(
            pinv_check_invariance(fib, PinvKind::First, 32, PinvSummation::Continued, &mut verdict),
            PinvStatus::Ok
        );
        assert_eq!(verdict, PinvVerdict::InverseInvariant);

        let mut lucas = ptr::null_mut();
        assert_eq!(pinv_apply_pipeline(cs("t42d").as_ptr(), fib, PinvSummation::Continued, &mut lucas), PinvStatus::Ok);
        assert_eq!(pinv_seq_term(lucas, 5, &mut s), PinvStatus::Ok);
        assert_eq!(take(s), "11");
        pinv_seq_free(lucas);
        pinv_seq_free(fib);
    }
}

#[test]
fn operators() {
    unsafe {
        let mut j = ptr::null_mut();
        assert_eq!(pinv_operator_new(cs("J").as_ptr(), cs("1/2").as_ptr(), &mut j), PinvStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(pinv_operator_entry(j, 4, 4, &mut s), PinvStatus::Ok);
        assert_eq!(take(s), "1/2");
        assert_eq!(pinv_operator_truncate_json(j, 2, 2, &mut s), PinvStatus::Ok);
        let m: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert!(m.to_string().contains("\"den\":\"2\""), "{m}");
        pinv_operator_free(j);

        let mut bad = ptr::null_mut();
        assert_eq!(pinv_operator_new(cs("J").as_ptr(), ptr::null(), &mut bad), PinvStatus::InvalidArgument);
        assert!(last_error().contains("requires a parameter"));
        assert_eq!(pinv_operator_new(cs("Z").as_ptr(), ptr::null(), &mut bad), PinvStatus::Parse);
        assert!(bad.is_null());
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut seq = ptr::null_mut();
        assert_eq!(pinv_seq_parse(ptr::null(), &mut seq), PinvStatus::NullArgument);
        assert_eq!(pinv_seq_parse(cs("fib").as_ptr(), ptr::null_mut()), PinvStatus::NullArgument);
        assert_eq!(pinv_seq_parse(cs("geom:(1,-2)").as_ptr(), &mut seq), PinvStatus::Ok);
        let mut v = PinvVerdict::Neither;
        assert_eq!(
            pinv_check_invariance(seq, PinvKind::Second, 8, PinvSummation::Classical, &mut v),
            PinvStatus::Summation
        );
        assert!(last_error().contains("diverges"));
        assert_eq!(pinv_check_invariance(seq, PinvKind::Second, 8, PinvSummation::Continued, &mut v), PinvStatus::Ok);
        assert_eq!(v, PinvVerdict::InverseInvariant);
        pinv_seq_free(seq);
        pinv_seq_free(ptr::null_mut());
        pinv_string_free(ptr::null_mut());
    }
}

#[test]
fn verify_suite() {
    unsafe {
        let mut passed = false;
        let mut report = ptr::null_mut();
        assert_eq!(pinv_verify(cs("similarity").as_ptr(), 8, 0, &mut passed, &mut report), PinvStatus::Ok);
        assert!(passed);
        let v: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert_eq!(v["suite"], "similarity");
        assert_eq!(pinv_verify(cs("bogus").as_ptr(), 8, 0, &mut passed, ptr::null_mut()), PinvStatus::Parse);
    }
}

/// Compiles the C smoke test against the generated header and the static
/// library. Skipped when no C compiler is available.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(header_dir.join("pascal_invariants.h").exists(), "header generated by build.rs");

    // target/<profile>/deps/abi-<hash> -> target/<profile>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libpascal_invariants_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let built = Command::new(&cc)
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status();
    match built {
        Err(e) => eprintln!("skipping: no C compiler ({e})"),
        Ok(status) => {
            assert!(status.success(), "C smoke test failed to compile");
            let out = Command::new(&exe).output().unwrap();
            assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
            assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
        }
    }
}
