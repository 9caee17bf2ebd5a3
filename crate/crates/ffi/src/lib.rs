//! C ABI over `matnum`.
//!
//! Objects are opaque handles created by `mns_*_new` style functions and
//! released with the matching `mns_*_free`. Every fallible call returns an
//! [`MnsStatus`]; on failure [`mns_last_error_message`] describes the error
//! for the calling thread. Integers cross the boundary as `int64_t`; values
//! that do not fit are reported as [`MnsStatus::Overflow`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use matnum::j2::{classify, J2DigitPair};
use matnum::linalg::{jordan_block, Int, IntMatrix, IntVector};
use matnum::numeration::{Certificate, NumberSystem, Representer, Verdict, Word};
use matnum::search::{check_full, search_certificate};
use matnum::threedigit::{pmz_system, three_digit_certificate};
use matnum::Error;
use num_traits::ToPrimitive;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MnsStatus {
    Ok = 0,
    InvalidInput = 1,
    Dimension = 2,
    Certificate = 3,
    Internal = 4,
    NullPointer = 5,
    Overflow = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MnsVerdict {
    Full = 0,
    NotFull = 1,
    Unknown = 2,
}

/// A base matrix with its digit list.
pub struct MnsSystem(NumberSystem);

/// A completeness certificate.
pub struct MnsCertificate(Certificate);

/// A digit word as indices into the digit list.
pub struct MnsWord(Vec<u32>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: MnsStatus, msg: impl Into<String>) -> MnsStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> MnsStatus {
    let status = match e {
        Error::Input(_) => MnsStatus::InvalidInput,
        Error::Dimension(_) => MnsStatus::Dimension,
        Error::Certificate(_) => MnsStatus::Certificate,
        Error::Internal(_) => MnsStatus::Internal,
    };
    fail(status, e.to_string())
}

/// Runs `f`, mapping library errors and panics to status codes.
fn guard(f: impl FnOnce() -> Result<MnsStatus, MnsStatus>) -> MnsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) | Ok(Err(s)) => s,
        Err(_) => fail(MnsStatus::Internal, "panic inside matnum"),
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, MnsStatus>;
}

impl<T> OrStatus<T> for matnum::Result<T> {
    fn or_status(self) -> Result<T, MnsStatus> {
        self.map_err(from_error)
    }
}

unsafe fn slice<'a, T>(p: *const T, len: usize) -> Result<&'a [T], MnsStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(fail(MnsStatus::NullPointer, "null array pointer"));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, MnsStatus> {
    p.as_ref().ok_or_else(|| fail(MnsStatus::NullPointer, "null handle"))
}

fn area(a: usize, b: usize) -> Result<usize, MnsStatus> {
    a.checked_mul(b).ok_or_else(|| fail(MnsStatus::Overflow, "array size overflows"))
}

fn out_ptr<T>(out: *mut T) -> Result<(), MnsStatus> {
    if out.is_null() {
        Err(fail(MnsStatus::NullPointer, "null output pointer"))
    } else {
        Ok(())
    }
}

fn vectors(flat: &[i64], count: usize, n: usize) -> Vec<IntVector> {
    (0..count).map(|i| IntVector::from_i64(&flat[i * n..(i + 1) * n])).collect()
}

fn to_i64(x: &Int) -> Result<i64, MnsStatus> {
    x.to_i64().ok_or_else(|| fail(MnsStatus::Overflow, format!("{x} does not fit in int64_t")))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mns_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a pointer returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mns_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a system with an `n`×`n` base (row-major) and `k` digits of
/// length `n` stored contiguously.
///
/// # Safety
/// `base` must point to `n*n` values, `digits` to `k*n` values, and `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn mns_system_new(
    n: usize,
    base: *const i64,
    k: usize,
    digits: *const i64,
    out: *mut *mut MnsSystem,
) -> MnsStatus {
    guard(|| {
        out_ptr(out)?;
        if n == 0 || k == 0 {
            return Err(fail(MnsStatus::InvalidInput, "dimension and digit count must be positive"));
        }
        let b = slice(base, area(n, n)?)?;
        let d = slice(digits, area(k, n)?)?;
        let rows = b.chunks(n).map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect();
        let m = IntMatrix::from_rows(rows).or_status()?;
        let ns = NumberSystem::new(m, vectors(d, k, n)).or_status()?;
        *out = Box::into_raw(Box::new(MnsSystem(ns)));
        Ok(MnsStatus::Ok)
    })
}

/// Creates a system with base `J_n`.
///
/// # Safety
/// `digits` must point to `k*n` values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mns_system_new_jordan(n: usize, k: usize, digits: *const i64, out: *mut *mut MnsSystem) -> MnsStatus {
    guard(|| {
        out_ptr(out)?;
        let j = jordan_block(n).or_status()?;
        let d = slice(digits, area(k, n)?)?;
        let ns = NumberSystem::new(j, vectors(d, k, n)).or_status()?;
        *out = Box::into_raw(Box::new(MnsSystem(ns)));
        Ok(MnsStatus::Ok)
    })
}

/// Creates `J_n` with digits `p = e_n`, `m = -e_n`, `z = 0` (indices 0, 1, 2).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mns_system_new_pmz(n: usize, out: *mut *mut MnsSystem) -> MnsStatus {
    guard(|| {
        out_ptr(out)?;
        let ns = pmz_system(n).or_status()?;
        *out = Box::into_raw(Box::new(MnsSystem(ns)));
        Ok(MnsStatus::Ok)
    })
}

/// # Safety
/// `sys` must be NULL or a handle from `mns_system_new*` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mns_system_free(sys: *mut MnsSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Dimension of the system, 0 for NULL.
///
/// # Safety
/// `sys` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mns_system_dim(sys: *const MnsSystem) -> usize {
    sys.as_ref().map_or(0, |s| s.0.dim())
}

/// Number of digits, 0 for NULL.
///
/// # Safety
/// `sys` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mns_system_digit_count(sys: *const MnsSystem) -> usize {
    sys.as_ref().map_or(0, |s| s.0.digit_count())
}

/// Evaluates a word and writes `dim` coordinates to `out`.
///
/// # Safety
/// `sys` must be a live handle, `word` must point to `len` values and `out`
/// must have room for `dim` values.
#[no_mangle]
pub unsafe extern "C" fn mns_evaluate(sys: *const MnsSystem, word: *const u32, len: usize, out: *mut i64) -> MnsStatus {
    guard(|| {
        let ns = &deref(sys)?.0;
        out_ptr(out)?;
        let w = Word::new(slice(word, len)?.iter().map(|&c| c as usize).collect());
        let v = ns.evaluate(&w).or_status()?;
        let vals = v.entries().iter().map(to_i64).collect::<Result<Vec<_>, _>>()?;
        ptr::copy_nonoverlapping(vals.as_ptr(), out, vals.len());
        Ok(MnsStatus::Ok)
    })
}

/// Classifies `{(a, b), (c, d)}` over `J_2`.
///
/// # Safety
/// `verdict` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mns_classify_j2(a: i64, b: i64, c: i64, d: i64, k_max: usize, verdict: *mut MnsVerdict) -> MnsStatus {
    guard(|| {
        out_ptr(verdict)?;
        let pair = J2DigitPair::from_i64(a, b, c, d).or_status()?;
        *verdict = verdict_code(&classify(&pair, k_max).or_status()?);
        Ok(MnsStatus::Ok)
    })
}

fn verdict_code(v: &Verdict) -> MnsVerdict {
    match v {
        Verdict::Full { .. } => MnsVerdict::Full,
        Verdict::NotFull { .. } => MnsVerdict::NotFull,
        Verdict::Unknown { .. } => MnsVerdict::Unknown,
    }
}

/// Bounded completeness check. When the verdict is Full and `cert` is not
/// NULL, a certificate handle is written to it; otherwise `*cert` is NULL.
///
/// # Safety
/// `sys` must be a live handle; `verdict` must be writable; `cert` must be
/// NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn mns_check_full(
    sys: *const MnsSystem,
    max_len: usize,
    max_mod: u64,
    verdict: *mut MnsVerdict,
    cert: *mut *mut MnsCertificate,
) -> MnsStatus {
    guard(|| {
        let ns = &deref(sys)?.0;
        out_ptr(verdict)?;
        let v = check_full(ns, max_len, max_mod).or_status()?;
        *verdict = verdict_code(&v);
        if !cert.is_null() {
            *cert = match v {
                Verdict::Full { certificate, .. } => Box::into_raw(Box::new(MnsCertificate(certificate))),
                _ => ptr::null_mut(),
            };
        }
        Ok(MnsStatus::Ok)
    })
}

/// Certificate for the `p, m, z` system of dimension `n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mns_certificate_three_digit(n: usize, out: *mut *mut MnsCertificate) -> MnsStatus {
    guard(|| {
        out_ptr(out)?;
        *out = Box::into_raw(Box::new(MnsCertificate(three_digit_certificate(n).or_status()?)));
        Ok(MnsStatus::Ok)
    })
}

/// Searches a certificate with words of length at most `max_len`. Writes
/// NULL and returns `Ok` when none is found within the bound.
///
/// # Safety
/// `sys` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mns_certificate_search(sys: *const MnsSystem, max_len: usize, out: *mut *mut MnsCertificate) -> MnsStatus {
    guard(|| {
        let ns = &deref(sys)?.0;
        out_ptr(out)?;
        let ones = vec![Int::from(1); ns.dim()];
        *out = match search_certificate(ns, &ones, max_len, max_len).or_status()? {
            Some(c) => Box::into_raw(Box::new(MnsCertificate(c))),
            None => ptr::null_mut(),
        };
        Ok(MnsStatus::Ok)
    })
}

/// Re-checks a certificate against a system by evaluation.
///
/// # Safety
/// Both handles must be live.
#[no_mangle]
pub unsafe extern "C" fn mns_certificate_verify(sys: *const MnsSystem, cert: *const MnsCertificate) -> MnsStatus {
    guard(|| {
        let ns = &deref(sys)?.0;
        let c = &deref(cert)?.0;
        c.verify(ns).or_status()?;
        Ok(MnsStatus::Ok)
    })
}

/// JSON text of a certificate; release with `mns_string_free`.
///
/// # Safety
/// `cert` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mns_certificate_to_json(cert: *const MnsCertificate) -> *mut c_char {
    match cert.as_ref() {
        Some(c) => serde_json::to_string(&c.0).map_or(ptr::null_mut(), to_c_string),
        None => {
            set_error("null handle");
            ptr::null_mut()
        }
    }
}

/// Parses a certificate from JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mns_certificate_from_json(json: *const c_char, out: *mut *mut MnsCertificate) -> MnsStatus {
    guard(|| {
        out_ptr(out)?;
        if json.is_null() {
            return Err(fail(MnsStatus::NullPointer, "null string"));
        }
        let text = CStr::from_ptr(json).to_str().map_err(|_| fail(MnsStatus::InvalidInput, "string is not UTF-8"))?;
        let c: Certificate = serde_json::from_str(text).map_err(|e| fail(MnsStatus::InvalidInput, format!("malformed certificate JSON: {e}")))?;
        *out = Box::into_raw(Box::new(MnsCertificate(c)));
        Ok(MnsStatus::Ok)
    })
}

/// # Safety
/// `cert` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mns_certificate_free(cert: *mut MnsCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Finds a word evaluating to `target` (`dim` values).
///
/// # Safety
/// Handles must be live, `target` must point to `dim` values and `out` must
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn mns_represent(
    sys: *const MnsSystem,
    cert: *const MnsCertificate,
    target: *const i64,
    out: *mut *mut MnsWord,
) -> MnsStatus {
    guard(|| {
        let ns = &deref(sys)?.0;
        let c = &deref(cert)?.0;
        out_ptr(out)?;
        let t = IntVector::from_i64(slice(target, ns.dim())?);
        let w = Representer::new(ns, c).or_status()?.represent(&t).or_status()?;
        let letters = w.letters().iter().map(|&l| l as u32).collect();
        *out = Box::into_raw(Box::new(MnsWord(letters)));
        Ok(MnsStatus::Ok)
    })
}

/// # Safety
/// `word` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mns_word_len(word: *const MnsWord) -> usize {
    word.as_ref().map_or(0, |w| w.0.len())
}

/// Letters of the word, valid until the handle is freed.
///
/// # Safety
/// `word` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mns_word_data(word: *const MnsWord) -> *const u32 {
    word.as_ref().map_or(ptr::null(), |w| w.0.as_ptr())
}

/// # Safety
/// `word` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mns_word_free(word: *mut MnsWord) {
    if !word.is_null() {
        drop(Box::from_raw(word));
    }
}

/// Runs the command-line front end on `argc` arguments (without the program
/// name). Writes the JSON output to `*out` (release with `mns_string_free`)
/// and returns the CLI exit code.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings and `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn mns_cli_run(argc: usize, argv: *const *const c_char, out: *mut *mut c_char) -> i32 {
    let run = || -> Result<i32, MnsStatus> {
        out_ptr(out)?;
        let mut args = vec!["matnum".to_string()];
        for &a in slice(argv, argc)? {
            if a.is_null() {
                return Err(fail(MnsStatus::NullPointer, "null argument"));
            }
            let s = CStr::from_ptr(a).to_str().map_err(|_| fail(MnsStatus::InvalidInput, "argument is not UTF-8"))?;
            args.push(s.to_string());
        }
        let outcome = matnum::cli::dispatch(args, &mut std::io::empty());
        *out = to_c_string(outcome.stdout);
        Ok(outcome.code)
    };
    match catch_unwind(AssertUnwindSafe(run)) {
        Ok(Ok(code)) => code,
        Ok(Err(_)) => matnum::cli::EXIT_INPUT,
        Err(_) => {
            set_error("panic inside matnum");
            matnum::cli::EXIT_UNKNOWN
        }
    }
}
