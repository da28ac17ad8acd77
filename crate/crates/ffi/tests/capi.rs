use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use semilocal_ffi::*;

fn last_error() -> String {
    let p = sl_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn build(name: &str, level: i32) -> *mut SlVoa {
    let name = CString::new(name).unwrap();
    let mut v = ptr::null_mut();
    assert_eq!(
        unsafe { sl_voa_build(name.as_ptr(), level, ptr::null(), &mut v) },
        SlStatus::Ok
    );
    assert!(!v.is_null());
    v
}

fn take_string(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { sl_string_free(p) };
    s
}

#[test]
fn build_serialize_parse_round_trip() {
    let v = build("heisenberg", 3);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { sl_voa_serialize(v, &mut text) }, SlStatus::Ok);
    let text = take_string(text);
    assert!(text.starts_with("name M(1)@3\n"));
    let c = CString::new(text.clone()).unwrap();
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { sl_voa_parse(c.as_ptr(), &mut w) }, SlStatus::Ok);
    let (mut lo, mut hi) = (9, 9);
    assert_eq!(unsafe { sl_voa_window(w, &mut lo, &mut hi) }, SlStatus::Ok);
    assert_eq!((lo, hi), (0, 3));
    let dims: Vec<usize> = (-1..=4)
        .map(|k| {
            let mut d = 99;
            assert_eq!(unsafe { sl_voa_dim(w, k, &mut d) }, SlStatus::Ok);
            d
        })
        .collect();
    assert_eq!(dims, [0, 1, 1, 2, 3, 0]);
    unsafe {
        sl_voa_free(v);
        sl_voa_free(w);
    }
}

#[test]
fn check_and_classify() {
    let v = build("idem", 0);
    let mut t = SlAxiomTally::default();
    assert_eq!(unsafe { sl_voa_check(v, &mut t) }, SlStatus::Ok);
    assert_eq!((t.skipped, t.failed), (0, 0));
    assert!(t.exact > 0);
    let mut c = SlClassification::default();
    assert_eq!(unsafe { sl_voa_classify(v, 1, 8, &mut c) }, SlStatus::Ok);
    assert_eq!(c.block_count, 2);
    assert!(c.semilocal && c.four_way_agreement);
    assert_eq!(c.local, 0);
    unsafe { sl_voa_free(v) };
}

#[test]
fn reports_match_the_cli() {
    let v = build("semidirect", 2);
    let cmd = CString::new("radicals").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { sl_voa_report(v, cmd.as_ptr(), 24301, 64, &mut out) },
        SlStatus::Ok
    );
    assert!(take_string(out).contains("J_lower_bound_dims=[1,1,2]"));
    let cmd = CString::new("build").unwrap();
    assert_eq!(
        unsafe { sl_voa_report(v, cmd.as_ptr(), 0, 1, &mut out) },
        SlStatus::Input
    );
    assert!(out.is_null());
    unsafe { sl_voa_free(v) };
}

#[test]
fn errors_carry_status_and_message() {
    let mut v = ptr::null_mut();
    let text = CString::new("name X\ncharge 1/0\n").unwrap();
    assert_eq!(unsafe { sl_voa_parse(text.as_ptr(), &mut v) }, SlStatus::Syntax);
    assert!(v.is_null());
    assert!(last_error().contains("line 2"));

    assert_eq!(unsafe { sl_voa_parse(ptr::null(), &mut v) }, SlStatus::NullPointer);
    let name = CString::new("lattice").unwrap();
    assert_eq!(
        unsafe { sl_voa_build(name.as_ptr(), 9, ptr::null(), &mut v) },
        SlStatus::Unsupported
    );
    let charge = CString::new("x").unwrap();
    assert_eq!(
        unsafe { sl_voa_build(name.as_ptr(), 2, charge.as_ptr(), &mut v) },
        SlStatus::Input
    );
    let mut t = SlAxiomTally::default();
    assert_eq!(unsafe { sl_voa_check(ptr::null(), &mut t) }, SlStatus::NullPointer);

    let good = build("q", 0);
    assert_eq!(unsafe { sl_voa_check(good, &mut t) }, SlStatus::Ok);
    assert!(sl_last_error().is_null());
    unsafe {
        sl_voa_free(good);
        sl_voa_free(ptr::null_mut());
        sl_string_free(ptr::null_mut());
    }
}

#[test]
fn corrupted_algebra_is_a_violation() {
    let v = build("heisenberg", 2);
    let mut text = ptr::null_mut();
    unsafe { sl_voa_serialize(v, &mut text) };
    let bad = take_string(text).replace("p 1 0 1 1 0 -> 0 1\n", "p 1 0 1 1 0 -> 0 5\n");
    let bad = CString::new(bad).unwrap();
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { sl_voa_parse(bad.as_ptr(), &mut w) }, SlStatus::Ok);
    let mut t = SlAxiomTally::default();
    assert_eq!(unsafe { sl_voa_check(w, &mut t) }, SlStatus::Violation);
    assert!(t.failed > 0);
    let mut c = SlClassification::default();
    assert_eq!(unsafe { sl_voa_classify(w, 1, 4, &mut c) }, SlStatus::Violation);
    unsafe {
        sl_voa_free(v);
        sl_voa_free(w);
    }
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(sl_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

fn target_dir() -> PathBuf {
    // tests run from <target>/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/semilocal.h")).unwrap();
    for f in [
        "sl_voa_parse",
        "sl_voa_build",
        "sl_voa_free",
        "sl_voa_serialize",
        "sl_voa_check",
        "sl_voa_classify",
        "sl_voa_report",
        "sl_string_free",
        "sl_last_error",
        "typedef struct SlVoa SlVoa;",
        "SL_STATUS_VIOLATION = 5",
    ] {
        assert!(header.contains(f), "{f}");
    }
}

#[test]
fn c_program_links_against_the_static_library() {
    let lib = target_dir().join("libsemilocal_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library at {}", lib.display());
        return;
    }
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let exe = Path::new(env!("CARGO_TARGET_TMPDIR")).join("smoke");
    let status = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(
        stdout.starts_with("blocks=2 local=0 parse=4 error=syntax error"),
        "{stdout}"
    );
}
