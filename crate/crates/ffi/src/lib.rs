//! C interface to `ypr-core`.
//!
//! Models are opaque handles created by `ypr_model_*` constructors and
//! released with [`ypr_model_free`]. Every fallible function returns a
//! [`YprStatus`]; on failure [`ypr_last_error_message`] describes the
//! problem until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ypr_core::cftp::{cftp_sample, Algorithm, Schedule};
use ypr_core::exact::{nucleotide_frequencies, poly_frequency, ypr_frequencies};
use ypr_core::model::{model_from_json, simplest};
use ypr_core::nucleotide::parse_word;
use ypr_core::{validate, Error, RateParameters};

/// Opaque model handle.
pub struct YprModel {
    params: RateParameters,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YprStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    InvalidParameters = 3,
    InvalidArgument = 4,
    Ineligible = 5,
    Solver = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// CFTP variant selector for [`ypr_cftp_sample`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YprAlgorithm {
    V1 = 0,
    V2Double = 1,
    V2Linear = 2,
    Special = 3,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> YprStatus {
    match e {
        Error::InvalidParameters(_) => YprStatus::InvalidParameters,
        Error::Parse(_) => YprStatus::Parse,
        Error::InvalidArgument(_) => YprStatus::InvalidArgument,
        Error::Ineligible(_) => YprStatus::Ineligible,
        Error::Solver(_) => YprStatus::Solver,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (YprStatus, String)>) -> YprStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            YprStatus::Ok
        }
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            YprStatus::Panic
        }
    }
}

fn lift<T>(r: ypr_core::Result<T>) -> Result<T, (YprStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (YprStatus, String) {
    (YprStatus::NullPointer, format!("{what} is null"))
}

unsafe fn model_ref<'a>(m: *const YprModel) -> Result<&'a YprModel, (YprStatus, String)> {
    m.as_ref().ok_or_else(|| null("model"))
}

unsafe fn c_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (YprStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (YprStatus::Parse, format!("{what} is not UTF-8")))
}

unsafe fn give(out: *mut *mut YprModel, params: RateParameters) -> Result<(), (YprStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(YprModel { params }));
    Ok(())
}

/// Message of the last failure on this thread; empty after a success.
/// The pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn ypr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn ypr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parse a JSON model document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ypr_model_from_json(json: *const c_char, out: *mut *mut YprModel) -> YprStatus {
    guard(|| {
        let s = c_str(json, "json")?;
        give(out, lift(model_from_json(s))?)
    })
}

/// The one-parameter CpG model with rate `rho`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ypr_model_simplest(rho: f64, out: *mut *mut YprModel) -> YprStatus {
    guard(|| give(out, lift(simplest(rho))?))
}

/// Release a model; null is ignored.
///
/// # Safety
/// `model` must come from a constructor of this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ypr_model_free(model: *mut YprModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Validation flags; any output pointer may be null.
///
/// # Safety
/// `model` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ypr_model_validate(
    model: *const YprModel,
    valid: *mut c_int,
    cftp_eligible: *mut c_int,
    special_eligible: *mut c_int,
) -> YprStatus {
    guard(|| {
        let r = validate(&model_ref(model)?.params);
        for (p, v) in [(valid, r.is_valid()), (cftp_eligible, r.cftp_eligible), (special_eligible, r.special_eligible)]
        {
            if !p.is_null() {
                *p = c_int::from(v);
            }
        }
        Ok(())
    })
}

/// Stationary `F(CG), F(CA), F(TG), F(TA)`.
///
/// # Safety
/// `model` must be a live handle and `out` point to 4 doubles.
#[no_mangle]
pub unsafe extern "C" fn ypr_ypr_frequencies(model: *const YprModel, out: *mut f64) -> YprStatus {
    guard(|| {
        let m = model_ref(model)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let f = lift(ypr_frequencies(&m.params))?;
        ptr::copy_nonoverlapping(f.as_ptr(), out, 4);
        Ok(())
    })
}

/// Stationary `F(A), F(T), F(C), F(G)`.
///
/// # Safety
/// `model` must be a live handle and `out` point to 4 doubles.
#[no_mangle]
pub unsafe extern "C" fn ypr_nucleotide_frequencies(model: *const YprModel, out: *mut f64) -> YprStatus {
    guard(|| {
        let m = model_ref(model)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let y = lift(ypr_frequencies(&m.params))?;
        let f = lift(nucleotide_frequencies(&m.params, &y))?;
        ptr::copy_nonoverlapping(f.as_ptr(), out, 4);
        Ok(())
    })
}

/// Stationary frequency of a word over `ACGT`, by the exact circle solver.
///
/// # Safety
/// `model` must be a live handle, `word` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ypr_poly_frequency(model: *const YprModel, word: *const c_char, out: *mut f64) -> YprStatus {
    guard(|| {
        let m = model_ref(model)?;
        let w = lift(parse_word(c_str(word, "word")?))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = lift(poly_frequency(&m.params, &w))?;
        Ok(())
    })
}

/// One perfect sample of sites `a+1 ..= b-1`, written to `buf` as a
/// NUL-terminated string of `b - a - 1` letters. `depth` (may be null)
/// receives the number of backward rings used.
///
/// # Safety
/// `model` must be a live handle and `buf` point to `buf_len` bytes.
#[no_mangle]
pub unsafe extern "C" fn ypr_cftp_sample(
    model: *const YprModel,
    a: i64,
    b: i64,
    algorithm: YprAlgorithm,
    seed: u64,
    buf: *mut c_char,
    buf_len: usize,
    depth: *mut usize,
) -> YprStatus {
    guard(|| {
        let m = model_ref(model)?;
        if buf.is_null() {
            return Err(null("buf"));
        }
        let algo = match algorithm {
            YprAlgorithm::V1 => Algorithm::V1,
            YprAlgorithm::V2Double => Algorithm::V2(Schedule::Double),
            YprAlgorithm::V2Linear => Algorithm::V2(Schedule::Linear),
            YprAlgorithm::Special => Algorithm::Special,
        };
        let s = lift(cftp_sample(&m.params, a, b, algo, seed))?;
        let text: String = s.window.iter().map(|x| x.as_char()).collect();
        if buf_len < text.len() + 1 {
            return Err((YprStatus::BufferTooSmall, format!("need {} bytes, got {buf_len}", text.len() + 1)));
        }
        ptr::copy_nonoverlapping(text.as_ptr().cast::<c_char>(), buf, text.len());
        *buf.add(text.len()) = 0;
        if !depth.is_null() {
            *depth = s.depth;
        }
        Ok(())
    })
}
