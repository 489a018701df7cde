use std::ffi::{CStr, CString};
use std::ptr;

use sturmian_ffi::*;

fn word(s: &str) -> *mut SturmianWord {
    let c = CString::new(s).unwrap();
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { sturmian_word_parse(c.as_ptr(), &mut w) }, SturmianStatus::Ok);
    w
}

fn string(w: *const SturmianWord) -> String {
    let mut need = 0;
    let st = unsafe { sturmian_word_to_string(w, ptr::null_mut(), 0, &mut need) };
    assert_eq!(st, SturmianStatus::BufferTooSmall);
    let mut buf = vec![0u8; need];
    let st = unsafe { sturmian_word_to_string(w, buf.as_mut_ptr().cast(), need, &mut need) };
    assert_eq!(st, SturmianStatus::Ok);
    CStr::from_bytes_with_nul(&buf).unwrap().to_str().unwrap().to_owned()
}

fn last_error() -> String {
    let p = sturmian_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn psi_round_trip() {
    let v = word("abab");
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { sturmian_psi(v, &mut w) }, SturmianStatus::Ok);
    assert_eq!(string(w), "abaababaaba");
    let mut len = 0;
    assert_eq!(unsafe { sturmian_word_len(w, &mut len) }, SturmianStatus::Ok);
    assert_eq!(len, 11);
    let mut central = false;
    assert_eq!(unsafe { sturmian_is_central(w, &mut central) }, SturmianStatus::Ok);
    assert!(central);
    unsafe {
        sturmian_word_free(v);
        sturmian_word_free(w);
    }
}

#[test]
fn christoffel_and_derivative() {
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { sturmian_christoffel_from_slope(3, 8, &mut w) }, SturmianStatus::Ok);
    assert_eq!(string(w), "aaabaaabaab");
    let mut yes = false;
    assert_eq!(unsafe { sturmian_is_christoffel(w, &mut yes) }, SturmianStatus::Ok);
    assert!(yes);
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { sturmian_christoffel_derivative(w, &mut d) }, SturmianStatus::Ok);
    assert_eq!(string(d), "aab");
    unsafe {
        sturmian_word_free(w);
        sturmian_word_free(d);
    }
}

#[test]
fn error_codes_and_messages() {
    let c = CString::new("abx").unwrap();
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { sturmian_word_parse(c.as_ptr(), &mut w) }, SturmianStatus::InvalidLetter);
    assert!(w.is_null());
    assert!(last_error().contains("position 2"));

    let bad = word("abab");
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { sturmian_christoffel_derivative(bad, &mut d) }, SturmianStatus::NotChristoffel);
    assert_eq!(unsafe { sturmian_standard_derivative(bad, &mut d) }, SturmianStatus::NotStandard);
    unsafe { sturmian_word_free(bad) };

    assert_eq!(unsafe { sturmian_christoffel_from_slope(2, 4, &mut d) }, SturmianStatus::InvalidSlope);
    assert_eq!(unsafe { sturmian_word_len(ptr::null(), ptr::null_mut()) }, SturmianStatus::NullPointer);
    assert_eq!(unsafe { sturmian_psi(ptr::null(), &mut d) }, SturmianStatus::NullPointer);

    let ok = word("ab");
    let mut len = 0;
    assert_eq!(unsafe { sturmian_word_len(ok, &mut len) }, SturmianStatus::Ok);
    assert!(sturmian_last_error().is_null());
    unsafe { sturmian_word_free(ok) };
}

#[test]
fn empty_word_and_height() {
    let e = word("");
    assert_eq!(string(e), "");
    let mut h = 0;
    assert_eq!(unsafe { sturmian_height(e, &mut h) }, SturmianStatus::Ok);
    assert_eq!(h, 1);
    let v = word("aababbaba");
    assert_eq!(unsafe { sturmian_height(v, &mut h) }, SturmianStatus::Ok);
    assert_eq!(h, 5);
    unsafe {
        sturmian_word_free(e);
        sturmian_word_free(v);
        sturmian_word_free(ptr::null_mut());
    }
}

#[test]
fn streams() {
    let f = sturmian_stream_fibonacci();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { sturmian_char_prefix(f, 13, &mut p) }, SturmianStatus::Ok);
    assert_eq!(string(p), "abaababaabaab");
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { sturmian_stream_derivative(f, &mut d) }, SturmianStatus::Ok);
    let mut q = ptr::null_mut();
    assert_eq!(unsafe { sturmian_char_prefix(d, 13, &mut q) }, SturmianStatus::Ok);
    assert_eq!(string(q), "abaababaabaab");

    let c = CString::new("a|ab").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { sturmian_stream_parse(c.as_ptr(), &mut s) }, SturmianStatus::Ok);
    let bad = CString::new("ab|").unwrap();
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { sturmian_stream_parse(bad.as_ptr(), &mut t) }, SturmianStatus::InvalidStream);
    unsafe {
        sturmian_word_free(p);
        sturmian_word_free(q);
        sturmian_stream_free(f);
        sturmian_stream_free(d);
        sturmian_stream_free(s);
    }
}

#[test]
fn verify_small() {
    let (mut passed, mut total) = (0, 0);
    assert_eq!(unsafe { sturmian_verify(5, &mut passed, &mut total) }, SturmianStatus::Ok);
    assert!(total > 0);
    assert_eq!(passed, total);
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/sturmian.h");
    let source = include_str!("../src/lib.rs");
    let exported: Vec<&str> = source
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exported.len() >= 20);
    for name in exported {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("STURMIAN_STATUS_NOT_CHRISTOFFEL = 7"));
}
