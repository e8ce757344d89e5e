//! C interface to `bloch_essnorm`.
//!
//! Symbols and harmonic functions cross the boundary as opaque handles
//! created by the `*_parse` functions and released with the matching
//! `*_free`. Every entry point returns a [`BlochStatus`]; on failure
//! [`bloch_last_error`] describes what went wrong on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bloch_essnorm::essnorm::{essnorm_report, ratio_at, EssNormOptions, RatioField};
use bloch_essnorm::extremal::{band_limit, extremals, znbar_norm};
use bloch_essnorm::grammar::parse_function;
use bloch_essnorm::{
    make_symbol, norm, AlphaWeight, DiskPoint, Error, HarmonicFunction, SamplingScheme, Symbol, SymbolSpec,
};
use num_complex::Complex64;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlochStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    SelfMapViolation = 4,
    Domain = 5,
    Numeric = 6,
    Resource = 7,
    Panic = 8,
}

/// A validated self-map of the disk.
pub struct BlochSymbol(Symbol);

/// A harmonic function `h + conj(g)`.
pub struct BlochFunction(HarmonicFunction);

/// Sampling parameters; obtain defaults from [`bloch_sampling_default`].
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct BlochSampling {
    pub radial_levels: u32,
    pub angular_base: u32,
    pub refinement_rounds: u32,
    pub seed: u64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct BlochExtremals {
    pub peak_radius: f64,
    pub peak_value: f64,
    pub band_min: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct BlochEssNorm {
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub bounded_sup: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> BlochStatus {
    match e {
        Error::Parse(_) | Error::Config { .. } => BlochStatus::Parse,
        Error::SelfMapViolation { .. } | Error::NearBoundarySymbol { .. } => BlochStatus::SelfMapViolation,
        Error::OutsideDisk(_) | Error::ParameterDomain(_) => BlochStatus::Domain,
        Error::ResourceBound { .. } | Error::Io(_) => BlochStatus::Resource,
        _ => BlochStatus::Numeric,
    }
}

struct Failure(BlochStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> BlochStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => BlochStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            BlochStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(BlochStatus::NullPointer, "null pointer argument".into())
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null());
    }
    // SAFETY: caller passes a NUL-terminated string.
    unsafe { CStr::from_ptr(s) }
        .to_str()
        .map_err(|_| Failure(BlochStatus::InvalidUtf8, "string is not valid UTF-8".into()))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    // SAFETY: caller passes a valid, writable pointer.
    unsafe { out.write(value) };
    Ok(())
}

unsafe fn scheme(s: *const BlochSampling) -> Result<SamplingScheme, Failure> {
    // SAFETY: null means defaults, anything else points to a valid struct.
    let s = if s.is_null() { bloch_sampling_default() } else { unsafe { *s } };
    let scheme = SamplingScheme {
        radial_levels: s.radial_levels,
        angular_base: s.angular_base as usize,
        refinement_rounds: s.refinement_rounds,
        seed: s.seed,
        ..SamplingScheme::default()
    };
    scheme.validate()?;
    Ok(scheme)
}

/// Message of the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bloch_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn bloch_sampling_default() -> BlochSampling {
    let d = SamplingScheme::default();
    BlochSampling {
        radial_levels: d.radial_levels,
        angular_base: d.angular_base as u32,
        refinement_rounds: d.refinement_rounds,
        seed: d.seed,
    }
}

/// Parses and validates a symbol such as `automorphism a=0.5+0i`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bloch_symbol_parse(spec: *const c_char, out: *mut *mut BlochSymbol) -> BlochStatus {
    guard(|| {
        let spec: SymbolSpec = unsafe { text(spec) }?.parse()?;
        let symbol = make_symbol(&spec)?;
        unsafe { write(out, Box::into_raw(Box::new(BlochSymbol(symbol)))) }
    })
}

/// # Safety
/// `symbol` must come from [`bloch_symbol_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bloch_symbol_free(symbol: *mut BlochSymbol) {
    if !symbol.is_null() {
        // SAFETY: the handle was produced by Box::into_raw.
        drop(unsafe { Box::from_raw(symbol) });
    }
}

/// Parses a harmonic function such as `znbar n=5`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bloch_function_parse(spec: *const c_char, out: *mut *mut BlochFunction) -> BlochStatus {
    guard(|| {
        let f = parse_function(unsafe { text(spec) }?)?;
        unsafe { write(out, Box::into_raw(Box::new(BlochFunction(f)))) }
    })
}

/// # Safety
/// `function` must come from [`bloch_function_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bloch_function_free(function: *mut BlochFunction) {
    if !function.is_null() {
        // SAFETY: the handle was produced by Box::into_raw.
        drop(unsafe { Box::from_raw(function) });
    }
}

/// Harmonic alpha-Bloch norm `|f(0)| + sup (1-|z|^2)^alpha (|f_z| + |f_zbar|)`.
/// A NULL `sampling` selects the defaults.
///
/// # Safety
/// `function` must be a live handle, `sampling` NULL or valid, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn bloch_norm(
    function: *const BlochFunction,
    alpha: f64,
    sampling: *const BlochSampling,
    out: *mut f64,
) -> BlochStatus {
    guard(|| {
        let f = unsafe { function.as_ref() }.ok_or_else(null)?;
        let value = norm(&f.0, AlphaWeight::new(alpha)?, &unsafe { scheme(sampling) }?)?;
        unsafe { write(out, value) }
    })
}

/// The pointwise ratio whose limits give the essential norm, at `re + i im`.
///
/// # Safety
/// `symbol` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bloch_ratio_at(
    symbol: *const BlochSymbol,
    alpha: f64,
    re: f64,
    im: f64,
    out: *mut f64,
) -> BlochStatus {
    guard(|| {
        let s = unsafe { symbol.as_ref() }.ok_or_else(null)?;
        let field = RatioField::new(s.0.clone(), AlphaWeight::new(alpha)?);
        let value = ratio_at(&field, &DiskPoint::new(Complex64::new(re, im))?)?;
        unsafe { write(out, value) }
    })
}

/// The three essential-norm estimates plus the boundedness supremum.
///
/// # Safety
/// `symbol` must be a live handle, `sampling` NULL or valid, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn bloch_essnorm(
    symbol: *const BlochSymbol,
    alpha: f64,
    sampling: *const BlochSampling,
    ladder_n: u32,
    out: *mut BlochEssNorm,
) -> BlochStatus {
    guard(|| {
        let s = unsafe { symbol.as_ref() }.ok_or_else(null)?;
        let opts = EssNormOptions { scheme: unsafe { scheme(sampling) }?, ladder_n, ..EssNormOptions::default() };
        let r = essnorm_report(&s.0, AlphaWeight::new(alpha)?, &opts)?;
        let value = BlochEssNorm { e1: r.e1, e2: r.e2, e3: r.e3, bounded_sup: r.bounded_sup };
        unsafe { write(out, value) }
    })
}

/// Closed-form norm of `z^n + conj(z)^n`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bloch_znbar_norm(n: u64, alpha: f64, out: *mut f64) -> BlochStatus {
    guard(|| {
        if n == 0 {
            return Err(Failure(BlochStatus::Domain, "n must be at least 1".into()));
        }
        let value = znbar_norm(n, AlphaWeight::new(alpha)?);
        unsafe { write(out, value) }
    })
}

/// `(2 alpha / e)^alpha`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bloch_band_limit(alpha: f64, out: *mut f64) -> BlochStatus {
    guard(|| unsafe { write(out, band_limit(AlphaWeight::new(alpha)?)) })
}

/// Peak radius, peak value and band minimum of `x^(n-1) (1-x^2)^alpha`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bloch_extremals(n: u64, alpha: f64, out: *mut BlochExtremals) -> BlochStatus {
    guard(|| {
        let e = extremals(n, AlphaWeight::new(alpha)?)?;
        let value = BlochExtremals { peak_radius: e.peak_radius, peak_value: e.peak_value, band_min: e.band_min };
        unsafe { write(out, value) }
    })
}
