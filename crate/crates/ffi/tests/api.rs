use std::ffi::{CStr, CString};
use std::ptr;

use matnum_ffi::*;

fn last_error() -> String {
    let p = mns_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn j2_pm() -> *mut MnsSystem {
    let digits = [0i64, 1, 0, -1];
    let mut sys = ptr::null_mut();
    assert_eq!(unsafe { mns_system_new_jordan(2, 2, digits.as_ptr(), &mut sys) }, MnsStatus::Ok);
    sys
}

#[test]
fn evaluate_words() {
    let sys = j2_pm();
    assert_eq!(unsafe { mns_system_dim(sys) }, 2);
    assert_eq!(unsafe { mns_system_digit_count(sys) }, 2);
    let word = [0u32, 1];
    let mut out = [0i64; 2];
    assert_eq!(unsafe { mns_evaluate(sys, word.as_ptr(), 2, out.as_mut_ptr()) }, MnsStatus::Ok);
    assert_eq!(out, [1, 0]);
    let bad = [0u32, 5];
    assert_eq!(unsafe { mns_evaluate(sys, bad.as_ptr(), 2, out.as_mut_ptr()) }, MnsStatus::InvalidInput);
    assert!(!last_error().is_empty());
    unsafe { mns_system_free(sys) };
}

#[test]
fn general_base() {
    let base = [1i64, 2, 0, 1];
    let digits = [0i64, 1, 0, -1];
    let mut sys = ptr::null_mut();
    assert_eq!(unsafe { mns_system_new(2, base.as_ptr(), 2, digits.as_ptr(), &mut sys) }, MnsStatus::Ok);
    let mut out = [0i64; 2];
    assert_eq!(unsafe { mns_evaluate(sys, [0u32, 1].as_ptr(), 2, out.as_mut_ptr()) }, MnsStatus::Ok);
    assert_eq!(out, [2, 0]);
    unsafe { mns_system_free(sys) };
    let dup = [0i64, 1, 0, 1];
    assert_eq!(unsafe { mns_system_new(2, base.as_ptr(), 2, dup.as_ptr(), &mut sys) }, MnsStatus::InvalidInput);
    assert_eq!(unsafe { mns_system_new(2, ptr::null(), 2, dup.as_ptr(), &mut sys) }, MnsStatus::NullPointer);
}

#[test]
fn classify_pairs() {
    let mut v = MnsVerdict::Unknown;
    assert_eq!(unsafe { mns_classify_j2(0, 1, 0, -1, 50, &mut v) }, MnsStatus::Ok);
    assert_eq!(v, MnsVerdict::Full);
    assert_eq!(unsafe { mns_classify_j2(0, 1, 0, 2, 50, &mut v) }, MnsStatus::Ok);
    assert_eq!(v, MnsVerdict::NotFull);
    assert_eq!(unsafe { mns_classify_j2(0, 1, 0, 1, 50, &mut v) }, MnsStatus::InvalidInput);
    assert_eq!(unsafe { mns_classify_j2(0, 1, 0, -1, 50, ptr::null_mut()) }, MnsStatus::NullPointer);
}

#[test]
fn check_full_and_represent() {
    let sys = j2_pm();
    let mut v = MnsVerdict::Unknown;
    let mut cert = ptr::null_mut();
    assert_eq!(unsafe { mns_check_full(sys, 40, 16, &mut v, &mut cert) }, MnsStatus::Ok);
    assert_eq!(v, MnsVerdict::Full);
    assert!(!cert.is_null());
    assert_eq!(unsafe { mns_certificate_verify(sys, cert) }, MnsStatus::Ok);
    let target = [-7i64, 3];
    let mut word = ptr::null_mut();
    assert_eq!(unsafe { mns_represent(sys, cert, target.as_ptr(), &mut word) }, MnsStatus::Ok);
    let len = unsafe { mns_word_len(word) };
    let mut out = [0i64; 2];
    assert_eq!(unsafe { mns_evaluate(sys, mns_word_data(word), len, out.as_mut_ptr()) }, MnsStatus::Ok);
    assert_eq!(out, target);
    unsafe {
        mns_word_free(word);
        mns_certificate_free(cert);
        mns_system_free(sys);
    }
}

#[test]
fn three_digit_certificate_json() {
    let mut sys = ptr::null_mut();
    let mut cert = ptr::null_mut();
    unsafe {
        assert_eq!(mns_system_new_pmz(4, &mut sys), MnsStatus::Ok);
        assert_eq!(mns_certificate_three_digit(4, &mut cert), MnsStatus::Ok);
        let json = mns_certificate_to_json(cert);
        assert!(!json.is_null());
        let mut back = ptr::null_mut();
        assert_eq!(mns_certificate_from_json(json, &mut back), MnsStatus::Ok);
        assert_eq!(mns_certificate_verify(sys, back), MnsStatus::Ok);
        mns_string_free(json);
        let garbage = CString::new("{").unwrap();
        let mut none = ptr::null_mut();
        assert_eq!(mns_certificate_from_json(garbage.as_ptr(), &mut none), MnsStatus::InvalidInput);
        let other = j2_pm();
        assert_eq!(mns_certificate_verify(other, back), MnsStatus::Certificate);
        mns_system_free(other);
        mns_certificate_free(back);
        mns_certificate_free(cert);
        mns_system_free(sys);
    }
}

#[test]
fn search_reports_absence() {
    let digits = [0i64, 0, 1, 0, 0, -1];
    let mut sys = ptr::null_mut();
    let mut cert = ptr::null_mut();
    unsafe {
        assert_eq!(mns_system_new_jordan(3, 2, digits.as_ptr(), &mut sys), MnsStatus::Ok);
        assert_eq!(mns_certificate_search(sys, 6, &mut cert), MnsStatus::Ok);
        assert!(cert.is_null());
        mns_system_free(sys);
    }
}

#[test]
fn overflow_is_reported() {
    let mut sys = ptr::null_mut();
    let mut out = [0i64; 6];
    let word = vec![0u32; 1 << 16];
    unsafe {
        assert_eq!(mns_system_new_pmz(6, &mut sys), MnsStatus::Ok);
        assert_eq!(mns_evaluate(sys, word.as_ptr(), word.len(), out.as_mut_ptr()), MnsStatus::Overflow);
        assert!(last_error().contains("int64_t"));
        assert_eq!(mns_evaluate(sys, word.as_ptr(), 100, out.as_mut_ptr()), MnsStatus::Ok);
        assert_eq!(out[1], 75_287_520);
        mns_system_free(sys);
    }
}

#[test]
fn cli_passthrough() {
    let args: Vec<CString> = ["thue-morse", "--k", "3"].iter().map(|s| CString::new(*s).unwrap()).collect();
    let ptrs: Vec<_> = args.iter().map(|a| a.as_ptr()).collect();
    let mut out = ptr::null_mut();
    let code = unsafe { mns_cli_run(ptrs.len(), ptrs.as_ptr(), &mut out) };
    assert_eq!(code, 0);
    let text = unsafe { CStr::from_ptr(out) }.to_string_lossy().into_owned();
    assert!(text.contains("pmmpmppm"));
    unsafe { mns_string_free(out) };
}
