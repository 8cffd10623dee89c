use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use downup_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn take(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { du_string_free(p) };
    s
}

fn last_error() -> String {
    let p = du_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn algebra(phi: &str, r: &str, s: &str, g: &str) -> *mut DuAlgebra {
    let mut a = ptr::null_mut();
    let st = unsafe { du_algebra_new(c(phi).as_ptr(), c(r).as_ptr(), c(s).as_ptr(), c(g).as_ptr(), &mut a) };
    assert_eq!(st, DuStatus::Ok, "{}", last_error());
    a
}

#[test]
fn normalize_and_multiply() {
    let a = algebra("h", "1", "2", "0");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { du_normalize(a, c("d*u").as_ptr(), &mut out) }, DuStatus::Ok);
    assert_eq!(take(out), "2*u*d + h");
    assert_eq!(unsafe { du_mul(a, c("d").as_ptr(), c("u").as_ptr(), &mut out) }, DuStatus::Ok);
    assert_eq!(take(out), "2*u*d + h");
    unsafe { du_algebra_free(a) };
}

#[test]
fn domain_errors_map_to_codes() {
    let a = algebra("h", "1", "2", "0");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { du_normalize(a, c("u**2").as_ptr(), &mut out) }, DuStatus::SyntaxError);
    assert!(last_error().starts_with("SyntaxError"));
    assert_eq!(unsafe { du_normalize(a, c("x").as_ptr(), &mut out) }, DuStatus::UnknownSymbol);
    assert!(out.is_null());
    unsafe { du_algebra_free(a) };

    let mut b = ptr::null_mut();
    let st = unsafe { du_algebra_new(c("h").as_ptr(), c("0").as_ptr(), c("2").as_ptr(), c("0").as_ptr(), &mut b) };
    assert_eq!(st, DuStatus::NotNoetherian);
    assert!(b.is_null());
}

#[test]
fn null_and_utf8_arguments() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { du_normalize(ptr::null(), c("u").as_ptr(), &mut out) }, DuStatus::NullArgument);
    let a = algebra("0", "2", "3", "0");
    assert_eq!(unsafe { du_normalize(a, ptr::null(), &mut out) }, DuStatus::NullArgument);
    let bad = [0xffu8, 0];
    assert_eq!(unsafe { du_normalize(a, bad.as_ptr().cast(), &mut out) }, DuStatus::InvalidUtf8);
    assert_eq!(unsafe { du_normalize(a, c("u").as_ptr(), ptr::null_mut()) }, DuStatus::NullArgument);
    unsafe {
        du_algebra_free(a);
        du_algebra_free(ptr::null_mut());
        du_string_free(ptr::null_mut());
    }
}

#[test]
fn classify_matches_cli() {
    let toml = "r = 1\ns = 2\ngamma = 1\nphi = 0\n";
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { du_algebra_from_toml(c(toml).as_ptr(), &mut a) }, DuStatus::Ok);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { du_classify_json(a, &mut out) }, DuStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    let ideals: Vec<&str> = v["families"].as_array().unwrap().iter().map(|f| f["ideal"].as_str().unwrap()).collect();
    assert_eq!(ideals, ["{0}", "<u>", "<d>"]);
    unsafe { du_algebra_free(a) };

    let mut bad = ptr::null_mut();
    assert_eq!(unsafe { du_algebra_from_toml(c("r = 1\nq = 2").as_ptr(), &mut bad) }, DuStatus::InvalidConfig);
}

#[test]
fn relation_groups() {
    let cases = [
        ("2", "4", DuRelationGroup { kind: DuGroupKind::SameSign, n: 2, m: 1, c: 0 }),
        ("2", "1/2", DuRelationGroup { kind: DuGroupKind::OppositeSign, n: 1, m: 1, c: 0 }),
        ("2", "3", DuRelationGroup { kind: DuGroupKind::Trivial, n: 0, m: 0, c: 0 }),
        ("zeta(4)", "-1", DuRelationGroup { kind: DuGroupKind::Lattice, n: 2, m: 1, c: 2 }),
    ];
    for (r, s, want) in cases {
        let a = algebra("0", r, s, "0");
        let mut g = DuRelationGroup { kind: DuGroupKind::Trivial, n: 0, m: 0, c: 0 };
        assert_eq!(unsafe { du_relation_group(a, &mut g) }, DuStatus::Ok);
        assert_eq!(g, want, "S({r}, {s})");
        unsafe { du_algebra_free(a) };
    }
}

#[test]
fn errors_are_thread_local() {
    let a = algebra("h", "1", "2", "0");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { du_normalize(a, c("(").as_ptr(), &mut out) }, DuStatus::SyntaxError);
    std::thread::spawn(|| assert!(du_last_error_message().is_null())).join().unwrap();
    assert!(last_error().starts_with("SyntaxError"));
    unsafe { du_algebra_free(a) };
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(du_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

fn manifest() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

// target/<profile>/deps/abi-* -> target/<profile>
fn profile_dir() -> PathBuf {
    std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_exports_and_links_from_c() {
    let header = std::fs::read_to_string(manifest().join("include/downup.h")).unwrap();
    for sym in ["du_algebra_new", "du_normalize", "du_classify_json", "du_last_error_message", "DU_STATUS_OK"] {
        assert!(header.contains(sym), "{sym} missing from header");
    }
    let lib = profile_dir().join("libdownup_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping C link check: no static library or C compiler");
        return;
    }
    let exe = profile_dir().join("downup_ffi_smoke");
    let status = Command::new("cc")
        .arg(manifest().join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("2*u*d + h"));
    assert!(lines.next().unwrap().starts_with("111 SyntaxError"));
}
