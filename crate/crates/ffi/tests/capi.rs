use std::ffi::{c_char, CStr, CString};
use std::process::Command;
use std::ptr;

use pointed_posets_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { pp_string_free(s) };
    text
}

fn last_error() -> Option<String> {
    let p = pp_last_error_message();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

fn open(family: &str, n: usize, i: i64, cap: usize) -> Result<*mut PpPoset, PpStatus> {
    let name = CString::new(family).unwrap();
    let mut h = ptr::null_mut();
    match unsafe { pp_poset_new(name.as_ptr(), n, i, cap, &mut h) } {
        PpStatus::Ok => Ok(h),
        s => Err(s),
    }
}

#[test]
fn pointed_three_round_trip() {
    let h = open("A", 3, -1, 1000).unwrap();
    let mut len = 0;
    let mut rank = 0;
    unsafe {
        assert_eq!(pp_poset_len(h, &mut len), PpStatus::Ok);
        assert_eq!(pp_poset_rank(h, &mut rank), PpStatus::Ok);
    }
    assert_eq!((len, rank), (10, 2));
    assert_eq!(last_error(), None);

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { pp_poset_charpoly(h, &mut s) }, PpStatus::Ok);
    assert_eq!(take(s), "x^2-6x+9");

    assert_eq!(unsafe { pp_poset_label(h, 0, &mut s) }, PpStatus::Ok);
    assert_eq!(take(s), "{1*|2*|3*}");
    assert_eq!(unsafe { pp_poset_label(h, 10, &mut s) }, PpStatus::InvalidArgument);
    assert!(last_error().unwrap().contains("out of range"));

    // three maximal elements
    assert_eq!(unsafe { pp_poset_mobius(h, &mut s) }, PpStatus::NotBounded);
    assert_eq!(unsafe { pp_poset_homology_json(h, &mut s) }, PpStatus::NotBounded);
    unsafe { pp_poset_free(h) };
}

#[test]
fn bounded_family_values() {
    let h = open("A_fixed", 4, 1, 1000).unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { pp_poset_mobius(h, &mut s) }, PpStatus::Ok);
    assert_eq!(take(s), "-16");
    assert_eq!(unsafe { pp_poset_homology_json(h, &mut s) }, PpStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["betti"], serde_json::json!([0, 0, 16]));
    unsafe { pp_poset_free(h) };
}

#[test]
fn closed_form_agrees_with_enumeration() {
    let name = CString::new("B").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { pp_closed_form(name.as_ptr(), 2, -1, &mut s) }, PpStatus::Ok);
    let predicted = take(s);
    let h = open("B", 2, -1, 1000).unwrap();
    assert_eq!(unsafe { pp_poset_charpoly(h, &mut s) }, PpStatus::Ok);
    assert_eq!(take(s), predicted);
    unsafe { pp_poset_free(h) };
}

#[test]
fn error_codes() {
    assert_eq!(open("C", 3, -1, 1000).unwrap_err(), PpStatus::InvalidArgument);
    assert!(last_error().is_some());
    assert_eq!(open("A", 0, -1, 1000).unwrap_err(), PpStatus::InvalidArgument);
    assert_eq!(open("MA", 5, -1, 100).unwrap_err(), PpStatus::LimitExceeded);
    assert!(last_error().unwrap().contains("cap"));

    let mut h = ptr::null_mut();
    assert_eq!(unsafe { pp_poset_new(ptr::null(), 3, -1, 1000, &mut h) }, PpStatus::NullPointer);
    let name = CString::new("A").unwrap();
    assert_eq!(unsafe { pp_poset_new(name.as_ptr(), 3, -1, 1000, ptr::null_mut()) }, PpStatus::NullPointer);
    let mut len = 0;
    assert_eq!(unsafe { pp_poset_len(ptr::null(), &mut len) }, PpStatus::NullPointer);
    unsafe {
        pp_poset_free(ptr::null_mut());
        pp_string_free(ptr::null_mut());
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/pointed_posets.h");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use_header.c");
    std::fs::write(
        &src,
        format!(
            "#include \"{header}\"\nint main(void) {{ pp_poset *p = 0; pp_status s = pp_poset_len(p, 0); return s == PP_STATUS_OK; }}\n"
        ),
    )
    .unwrap();
    let status = Command::new("cc").arg("-fsyntax-only").arg("-Wall").arg("-Werror").arg(&src).status().unwrap();
    assert!(status.success());
}

