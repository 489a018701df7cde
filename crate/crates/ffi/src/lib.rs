//! C ABI for the `sturmian` crate.
//!
//! Words and directive streams cross the boundary as opaque handles that the
//! caller releases with the matching `*_free` function. Every fallible call
//! returns a [`SturmianStatus`]; on failure a message is available from
//! [`sturmian_last_error`] until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sturmian::characteristic::{self, DirectiveStream};
use sturmian::{christoffel, depth, oracle, palindrome, standard, BinaryWord, Error};

/// Result code of every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SturmianStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidLetter = 3,
    EmptyWord = 4,
    ConstantWord = 5,
    NotCentral = 6,
    NotChristoffel = 7,
    NotStandard = 8,
    NotInCode = 9,
    AmbiguousCode = 10,
    InvalidSlope = 11,
    InvalidCoefficients = 12,
    InvalidStream = 13,
    LimitExceeded = 14,
    OutOfRange = 15,
    BufferTooSmall = 16,
    Panic = 17,
}

/// Opaque finite word over `{a, b}`.
pub struct SturmianWord(BinaryWord);

/// Opaque infinite directive stream.
pub struct SturmianStream(DirectiveStream);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SturmianStatus {
    match e {
        Error::EmptyWord { .. } => SturmianStatus::EmptyWord,
        Error::ConstantWord { .. } => SturmianStatus::ConstantWord,
        Error::InvalidLetter { .. } => SturmianStatus::InvalidLetter,
        Error::NotCentral(_) => SturmianStatus::NotCentral,
        Error::NotChristoffel(_) => SturmianStatus::NotChristoffel,
        Error::NotStandard(_) => SturmianStatus::NotStandard,
        Error::NotInCode { .. } => SturmianStatus::NotInCode,
        Error::AmbiguousCode(..) => SturmianStatus::AmbiguousCode,
        Error::InvalidSlope { .. } => SturmianStatus::InvalidSlope,
        Error::InvalidCoefficients(_) => SturmianStatus::InvalidCoefficients,
        Error::InvalidStream(_) => SturmianStatus::InvalidStream,
        Error::LimitExceeded { .. } => SturmianStatus::LimitExceeded,
        Error::OutOfRange(_) => SturmianStatus::OutOfRange,
    }
}

struct Fail(SturmianStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, records any failure and converts panics into `Panic`.
fn guarded(f: impl FnOnce() -> Result<(), Fail>) -> SturmianStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SturmianStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SturmianStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(SturmianStatus::NullPointer, format!("{what} is null")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| Fail(SturmianStatus::NullPointer, format!("{what} is null")))
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(SturmianStatus::NullPointer, "string argument is null".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(SturmianStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn emit_word(dst: *mut *mut SturmianWord, w: BinaryWord) -> Result<(), Fail> {
    *out(dst, "out")? = Box::into_raw(Box::new(SturmianWord(w)));
    Ok(())
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn sturmian_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a NUL-terminated string over `{a, b}`; `""` is the empty word.
///
/// # Safety
/// `s` must be a valid C string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn sturmian_word_parse(s: *const c_char, out: *mut *mut SturmianWord) -> SturmianStatus {
    guarded(|| emit_word(out, BinaryWord::parse(text(s)?)?))
}

/// # Safety
/// `w` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sturmian_word_free(w: *mut SturmianWord) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// # Safety
/// `w` must be a live handle; `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sturmian_word_len(w: *const SturmianWord, len: *mut usize) -> SturmianStatus {
    guarded(|| {
        *out(len, "len")? = borrow(w, "word")?.0.len();
        Ok(())
    })
}

/// Copies the word and a trailing NUL into `buf`. `needed` receives the
/// required capacity including the NUL, also when `BufferTooSmall` is returned.
///
/// # Safety
/// `buf` must hold `cap` bytes (it may be null when `cap` is 0).
#[no_mangle]
pub unsafe extern "C" fn sturmian_word_to_string(
    w: *const SturmianWord,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> SturmianStatus {
    guarded(|| {
        let s = borrow(w, "word")?.0.to_string();
        let need = s.len() + 1;
        if !needed.is_null() {
            *needed = need;
        }
        if cap < need || buf.is_null() {
            return Err(Fail(SturmianStatus::BufferTooSmall, format!("need {need} bytes, got {cap}")));
        }
        ptr::copy_nonoverlapping(s.as_ptr(), buf.cast::<u8>(), s.len());
        *buf.add(s.len()) = 0;
        Ok(())
    })
}

/// Applies `f` to the word behind `w` and stores the result as a new handle.
unsafe fn map_word(
    w: *const SturmianWord,
    out: *mut *mut SturmianWord,
    f: impl FnOnce(&BinaryWord) -> Result<BinaryWord, Error>,
) -> SturmianStatus {
    guarded(|| emit_word(out, f(&borrow(w, "word")?.0)?))
}

/// Iterated palindromic closure ψ(v).
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sturmian_psi(w: *const SturmianWord, out: *mut *mut SturmianWord) -> SturmianStatus {
    map_word(w, out, |w| Ok(palindrome::psi(w)))
}

/// Shortest palindrome having `w` as a prefix.
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sturmian_palindromic_closure(
    w: *const SturmianWord,
    out: *mut *mut SturmianWord,
) -> SturmianStatus {
    map_word(w, out, |w| Ok(palindrome::palindromic_closure(w)))
}

/// The Christoffel word aψ(w)b.
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sturmian_christoffel_from_directive(
    w: *const SturmianWord,
    out: *mut *mut SturmianWord,
) -> SturmianStatus {
    map_word(w, out, |w| Ok(christoffel::from_directive(w)))
}

/// Derivative of a proper Christoffel word.
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sturmian_christoffel_derivative(
    w: *const SturmianWord,
    out: *mut *mut SturmianWord,
) -> SturmianStatus {
    map_word(w, out, christoffel::derivative)
}

/// Derivative of a proper standard word.
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sturmian_standard_derivative(
    w: *const SturmianWord,
    out: *mut *mut SturmianWord,
) -> SturmianStatus {
    map_word(w, out, standard::derivative)
}

/// Christoffel word with `p` letters b and `q` letters a.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sturmian_christoffel_from_slope(
    p: u64,
    q: u64,
    out: *mut *mut SturmianWord,
) -> SturmianStatus {
    guarded(|| emit_word(out, christoffel::from_slope(p, q)?))
}

unsafe fn test_word(w: *const SturmianWord, result: *mut bool, f: impl FnOnce(&BinaryWord) -> bool) -> SturmianStatus {
    guarded(|| {
        *out(result, "result")? = f(&borrow(w, "word")?.0);
        Ok(())
    })
}

/// Whether `w` is a central word.
///
/// # Safety
/// `w` must be a live handle; `result` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sturmian_is_central(w: *const SturmianWord, result: *mut bool) -> SturmianStatus {
    test_word(w, result, |w| palindrome::is_central(w).is_central)
}

/// Whether `w` is a Christoffel word, proper or not.
///
/// # Safety
/// `w` must be a live handle; `result` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sturmian_is_christoffel(w: *const SturmianWord, result: *mut bool) -> SturmianStatus {
    test_word(w, result, christoffel::is_christoffel)
}

/// Whether `w` is a standard word, letters included.
///
/// # Safety
/// `w` must be a live handle; `result` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sturmian_is_standard(w: *const SturmianWord, result: *mut bool) -> SturmianStatus {
    test_word(w, result, standard::is_standard)
}

/// Height h(v) of a directive word.
///
/// # Safety
/// `v` must be a live handle; `result` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sturmian_height(v: *const SturmianWord, result: *mut usize) -> SturmianStatus {
    guarded(|| {
        *out(result, "result")? = depth::height(&borrow(v, "word")?.0);
        Ok(())
    })
}

/// Parses a directive `"u|q"` meaning u·q^ω.
///
/// # Safety
/// `s` must be a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sturmian_stream_parse(s: *const c_char, out: *mut *mut SturmianStream) -> SturmianStatus {
    guarded(|| {
        let stream: DirectiveStream = text(s)?.parse()?;
        *self::out(out, "out")? = Box::into_raw(Box::new(SturmianStream(stream)));
        Ok(())
    })
}

/// The directive (ab)^ω of the Fibonacci word.
#[no_mangle]
pub extern "C" fn sturmian_stream_fibonacci() -> *mut SturmianStream {
    Box::into_raw(Box::new(SturmianStream(DirectiveStream::fibonacci())))
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sturmian_stream_free(s: *mut SturmianStream) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// First `n` letters of the characteristic word of `s`.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sturmian_char_prefix(
    s: *const SturmianStream,
    n: usize,
    out: *mut *mut SturmianWord,
) -> SturmianStatus {
    guarded(|| emit_word(out, characteristic::prefix(&borrow(s, "stream")?.0, n)?.word))
}

/// Directive of the derivative Ds as a new stream handle.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sturmian_stream_derivative(
    s: *const SturmianStream,
    out: *mut *mut SturmianStream,
) -> SturmianStatus {
    guarded(|| {
        let d = characteristic::derivative_stream(&borrow(s, "stream")?.0)?;
        *self::out(out, "out")? = Box::into_raw(Box::new(SturmianStream(d)));
        Ok(())
    })
}

/// Runs the exhaustive identity checks on directive words up to `max_len`.
///
/// # Safety
/// `passed` and `total` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sturmian_verify(max_len: usize, passed: *mut usize, total: *mut usize) -> SturmianStatus {
    guarded(|| {
        let report = oracle::verify_all(max_len)?;
        *out(passed, "passed")? = report.results.iter().filter(|r| r.passed).count();
        *out(total, "total")? = report.results.len();
        Ok(())
    })
}
