use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use lieaff_ffi::*;

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { lieaff_string_free(p) };
    s
}

fn last_error() -> Option<String> {
    let p = lieaff_last_error();
    (!p.is_null()).then(|| take_string(p))
}

const HEIS: &str = r#"{"name":"heis3","dim":3,"basis":["x","y","z"],
  "brackets":[{"left":0,"right":1,"result":[["0","0"],["0","0"],["1","0"]]}]}"#;

#[test]
fn json_round_trip_and_decision() {
    let json = CString::new(HEIS).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { lieaff_algebra_from_json(json.as_ptr(), &mut g) },
        LieaffStatus::Ok
    );
    assert!(last_error().is_none());

    let mut dim = 0usize;
    assert_eq!(unsafe { lieaff_algebra_dim(g, &mut dim) }, LieaffStatus::Ok);
    assert_eq!(dim, 3);

    let mut v = LieaffVerdict::Unknown;
    assert_eq!(unsafe { lieaff_decide(g, 8, 1, &mut v) }, LieaffStatus::Ok);
    assert_eq!(v, LieaffVerdict::Yes);

    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { lieaff_analyze_json(g, 8, 1, &mut out) },
        LieaffStatus::Ok
    );
    let report: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(report["decision"]["verdict"], "YES");
    assert_eq!(report["profile"]["nilpotent"], true);

    unsafe { lieaff_algebra_free(g) };
}

#[test]
fn error_codes() {
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { lieaff_algebra_from_json(ptr::null(), &mut g) },
        LieaffStatus::NullPointer
    );
    assert!(g.is_null());
    assert!(last_error().unwrap().contains("null"));

    let broken = CString::new("{\"name\": ").unwrap();
    assert_eq!(
        unsafe { lieaff_algebra_from_json(broken.as_ptr(), &mut g) },
        LieaffStatus::Parse
    );
    assert!(last_error().unwrap().contains("line 1"));

    let jacobi = CString::new(
        r#"{"name":"bad","dim":3,"basis":["a","b","c"],"brackets":[
            {"left":0,"right":1,"result":[["1","0"],["0","0"],["0","0"]]},
            {"left":1,"right":2,"result":[["0","0"],["1","0"],["0","0"]]},
            {"left":2,"right":0,"result":[["0","0"],["0","0"],["1","0"]]}]}"#,
    )
    .unwrap();
    assert_eq!(
        unsafe { lieaff_algebra_from_json(jacobi.as_ptr(), &mut g) },
        LieaffStatus::InvalidAlgebra
    );
    assert!(last_error().unwrap().to_lowercase().contains("jacobi"));

    let invalid_utf8 = [0xffu8, 0xfe, 0];
    assert_eq!(
        unsafe { lieaff_algebra_builtin(invalid_utf8.as_ptr().cast(), &mut g) },
        LieaffStatus::InvalidUtf8
    );

    let mut dim = 0usize;
    assert_eq!(
        unsafe { lieaff_algebra_dim(ptr::null(), &mut dim) },
        LieaffStatus::NullPointer
    );
    unsafe {
        lieaff_algebra_free(ptr::null_mut());
        lieaff_string_free(ptr::null_mut());
    }
}

#[test]
fn classification_table() {
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { lieaff_classify_dim3_json(8, 1, &mut out) },
        LieaffStatus::Ok
    );
    let table: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    let verdicts: Vec<&str> = table["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["decision"]["verdict"].as_str().unwrap())
        .collect();
    assert_eq!(verdicts, ["YES", "YES", "YES", "NO"]);
}

#[test]
fn header_declares_the_api() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/lieaff.h")).unwrap();
    for name in [
        "typedef struct LieaffAlgebra LieaffAlgebra",
        "LIEAFF_STATUS_INVALID_ALGEBRA",
        "LIEAFF_VERDICT_UNKNOWN",
        "lieaff_algebra_from_json",
        "lieaff_algebra_builtin",
        "lieaff_algebra_free",
        "lieaff_algebra_dim",
        "lieaff_decide",
        "lieaff_analyze_json",
        "lieaff_classify_dim3_json",
        "lieaff_last_error",
        "lieaff_string_free",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

/// Compiles a C program against the header and the static library.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let target = std::env::current_exe()
        .unwrap()
        .parent()
        .and_then(|deps| deps.parent())
        .unwrap()
        .to_path_buf();
    let lib = target.join("liblieaff_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let exe = tempfile_path("lieaff_smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).contains("so5"));
}

fn tempfile_path(stem: &str) -> PathBuf {
    std::env::temp_dir().join(format!("{stem}_{}", std::process::id()))
}
