//! C ABI over the `specgap` library.
//!
//! Objects are opaque handles created by `*_new`/producer functions and
//! released with the matching `*_free`. Every fallible call returns a
//! [`SpecgapStatus`]; on failure a message for the calling thread is
//! available from [`specgap_last_error`]. Strings returned to the caller are
//! NUL-terminated and must be released with [`specgap_string_free`]. Panics
//! never cross the boundary.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use specgap::cli::{self, PartialConfig};
use specgap::diffpoly::{parse_family, parse_poly1, substitute, Poly1};
use specgap::gapcert::{scan_gaps, CertFamily, GapInterval, ScanConfig, SearchConfig, SignVerdict};
use specgap::ladder::compute_f;
use specgap::oracle::{default_half_width, eigensolve_fd, eigensolve_shoot, Spectrum};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecgapStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    InvalidArgument = 3,
    OutOfRange = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecgapVerdict {
    PositiveDefinite = 0,
    NegativeDefinite = 1,
    Indefinite = 2,
    IdenticallyZero = 3,
}

impl From<SignVerdict> for SpecgapVerdict {
    fn from(v: SignVerdict) -> Self {
        match v {
            SignVerdict::PositiveDefinite => SpecgapVerdict::PositiveDefinite,
            SignVerdict::NegativeDefinite => SpecgapVerdict::NegativeDefinite,
            SignVerdict::Indefinite => SpecgapVerdict::Indefinite,
            SignVerdict::IdenticallyZero => SpecgapVerdict::IdenticallyZero,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecgapMethod {
    FiniteDifference = 0,
    NumerovShooting = 1,
}

/// Certificate family `F_N(x, E, λ)` for a fixed potential and test-function
/// family.
pub struct SpecgapFamily {
    potential: Poly1,
    family: CertFamily,
}

/// Result of an energy scan.
pub struct SpecgapGaps {
    gaps: Vec<GapInterval>,
}

pub struct SpecgapSpectrum {
    spectrum: Spectrum,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(SpecgapStatus, String);

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SpecgapStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            SpecgapStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal error".into());
            set_error(format!("panic: {msg}"));
            SpecgapStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(SpecgapStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(SpecgapStatus::InvalidArgument, msg.into())
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| invalid(format!("{what} is not UTF-8")))
}

unsafe fn slice<'a>(p: *const f64, len: usize, what: &str) -> Result<&'a [f64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("NUL bytes removed").into_raw()
}

/// Message describing the last failed call on this thread, or NULL. The
/// pointer stays valid until the next call into this library on the same
/// thread.
#[no_mangle]
pub extern "C" fn specgap_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn specgap_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn specgap_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Pretty-printed `F_N` in the `V − E` form.
///
/// # Safety
/// `out_text` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn specgap_derive(order: usize, out_text: *mut *mut c_char) -> SpecgapStatus {
    guard(|| {
        let slot = out(out_text, "out_text")?;
        let r = cli::derive(order).map_err(|e| invalid(e.to_string()))?;
        *slot = to_c_string(r.potential_form);
        Ok(())
    })
}

/// Build `F_N` for `potential` (polynomial in `x`) and `a0_family`
/// (polynomial in `x` and `l1..l9`).
///
/// # Safety
/// String arguments must be NUL-terminated; `out_family` must be valid.
#[no_mangle]
pub unsafe extern "C" fn specgap_family_new(
    potential: *const c_char,
    order: usize,
    a0_family: *const c_char,
    out_family: *mut *mut SpecgapFamily,
) -> SpecgapStatus {
    guard(|| {
        let slot = out(out_family, "out_family")?;
        *slot = ptr::null_mut();
        if order == 0 {
            return Err(invalid("N must be at least 1"));
        }
        let parse =
            |e: specgap::diffpoly::ParseError, what: &str| Failure(SpecgapStatus::Parse, format!("{what}: {e}"));
        let v = parse_poly1(text(potential, "potential")?).map_err(|e| parse(e, "potential"))?;
        let a0 = parse_family(text(a0_family, "a0_family")?).map_err(|e| parse(e, "a0_family"))?;
        let f = substitute(&compute_f(order), &v, &BTreeMap::from([(0, a0)])).map_err(|e| invalid(e.to_string()))?;
        *slot = Box::into_raw(Box::new(SpecgapFamily { potential: v, family: CertFamily::new(f) }));
        Ok(())
    })
}

/// # Safety
/// `family` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn specgap_family_free(family: *mut SpecgapFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// Number of `λ` parameters, or 0 for a NULL handle.
///
/// # Safety
/// `family` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn specgap_family_nparams(family: *const SpecgapFamily) -> usize {
    family.as_ref().map_or(0, |f| f.family.nparams())
}

/// The certificate polynomial as text.
///
/// # Safety
/// `family` must be a live handle and `out_text` valid.
#[no_mangle]
pub unsafe extern "C" fn specgap_family_text(
    family: *const SpecgapFamily,
    out_text: *mut *mut c_char,
) -> SpecgapStatus {
    guard(|| {
        let f = handle(family, "family")?;
        *out(out_text, "out_text")? = to_c_string(f.family.exact().to_string());
        Ok(())
    })
}

/// Exact sign of `F(·, E, λ)` on the real line, with `E` and `λ` taken as the
/// exact binary values of the doubles.
///
/// # Safety
/// `lambda` must point to `nlambda` doubles; `out_verdict` must be valid.
#[no_mangle]
pub unsafe extern "C" fn specgap_family_sign(
    family: *const SpecgapFamily,
    energy: f64,
    lambda: *const f64,
    nlambda: usize,
    out_verdict: *mut SpecgapVerdict,
) -> SpecgapStatus {
    guard(|| {
        let f = handle(family, "family")?;
        let l = slice(lambda, nlambda, "lambda")?;
        let slot = out(out_verdict, "out_verdict")?;
        if l.len() != f.family.nparams() {
            return Err(invalid(format!("expected {} parameters, got {}", f.family.nparams(), l.len())));
        }
        if !energy.is_finite() || l.iter().any(|x| !x.is_finite()) {
            return Err(invalid("energy and parameters must be finite"));
        }
        *slot = f.family.verdict(energy, l).into();
        Ok(())
    })
}

/// Scan `[e_lo, e_hi]` for certified eigenvalue-free intervals. `lambda_box`
/// holds `2·nparams` doubles `lo₁, hi₁, lo₂, hi₂, …`.
///
/// # Safety
/// Pointers must be valid for the stated lengths.
#[no_mangle]
pub unsafe extern "C" fn specgap_scan(
    family: *const SpecgapFamily,
    e_lo: f64,
    e_hi: f64,
    e_step: f64,
    lambda_box: *const f64,
    box_len: usize,
    tol: f64,
    seed: u64,
    out_gaps: *mut *mut SpecgapGaps,
) -> SpecgapStatus {
    guard(|| {
        let f = handle(family, "family")?;
        let b = slice(lambda_box, box_len, "lambda_box")?;
        let slot = out(out_gaps, "out_gaps")?;
        *slot = ptr::null_mut();
        if b.len() != 2 * f.family.nparams() {
            return Err(invalid(format!("lambda_box needs {} entries", 2 * f.family.nparams())));
        }
        if !(e_lo.is_finite() && e_hi.is_finite() && e_step > 0.0 && tol > 0.0) {
            return Err(invalid("energy range must be finite with positive step and tolerance"));
        }
        let cfg = ScanConfig {
            e_range: (e_lo, e_hi),
            e_step,
            lambda_box: b.chunks(2).map(|c| (c[0], c[1])).collect(),
            tol,
            search: SearchConfig { seed, ..SearchConfig::default() },
            ..ScanConfig::default()
        };
        *slot = Box::into_raw(Box::new(SpecgapGaps { gaps: scan_gaps(&f.family, &cfg) }));
        Ok(())
    })
}

/// # Safety
/// `gaps` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn specgap_gaps_free(gaps: *mut SpecgapGaps) {
    if !gaps.is_null() {
        drop(Box::from_raw(gaps));
    }
}

/// # Safety
/// `gaps` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn specgap_gaps_len(gaps: *const SpecgapGaps) -> usize {
    gaps.as_ref().map_or(0, |g| g.gaps.len())
}

/// Bounds of interval `index`; `e_low` is `-INFINITY` for intervals
/// unbounded below.
///
/// # Safety
/// `gaps` must be a live handle; output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn specgap_gaps_get(
    gaps: *const SpecgapGaps,
    index: usize,
    e_low: *mut f64,
    e_high: *mut f64,
) -> SpecgapStatus {
    guard(|| {
        let g = handle(gaps, "gaps")?;
        let gap = g
            .gaps
            .get(index)
            .ok_or_else(|| Failure(SpecgapStatus::OutOfRange, format!("index {index} of {}", g.gaps.len())))?;
        *out(e_low, "e_low")? = gap.e_low;
        *out(e_high, "e_high")? = gap.e_high;
        Ok(())
    })
}

fn solve(v: &Poly1, method: SpecgapMethod, half_width: f64, grid: usize, count: usize) -> Result<Spectrum, Failure> {
    if grid < 100 {
        return Err(invalid("grid must have at least 100 intervals"));
    }
    if half_width.is_nan() || half_width.is_infinite() {
        return Err(invalid("half-width must be finite"));
    }
    let l = if half_width > 0.0 { half_width } else { default_half_width(v, count) };
    Ok(match method {
        SpecgapMethod::FiniteDifference => eigensolve_fd(v, l, grid, count),
        SpecgapMethod::NumerovShooting => eigensolve_shoot(v, l, grid, count),
    })
}

/// Lowest `count` eigenvalues of `−½d²/dx² + V`. A non-positive `half_width`
/// selects the default domain.
///
/// # Safety
/// `potential` must be NUL-terminated; `out_spectrum` valid.
#[no_mangle]
pub unsafe extern "C" fn specgap_eigensolve(
    potential: *const c_char,
    method: SpecgapMethod,
    half_width: f64,
    grid: usize,
    count: usize,
    out_spectrum: *mut *mut SpecgapSpectrum,
) -> SpecgapStatus {
    guard(|| {
        let slot = out(out_spectrum, "out_spectrum")?;
        *slot = ptr::null_mut();
        let v = parse_poly1(text(potential, "potential")?)
            .map_err(|e| Failure(SpecgapStatus::Parse, format!("potential: {e}")))?;
        let spectrum = solve(&v, method, half_width, grid, count)?;
        *slot = Box::into_raw(Box::new(SpecgapSpectrum { spectrum }));
        Ok(())
    })
}

/// Spectrum of the family's potential.
///
/// # Safety
/// `family` must be a live handle; `out_spectrum` valid.
#[no_mangle]
pub unsafe extern "C" fn specgap_family_eigensolve(
    family: *const SpecgapFamily,
    method: SpecgapMethod,
    half_width: f64,
    grid: usize,
    count: usize,
    out_spectrum: *mut *mut SpecgapSpectrum,
) -> SpecgapStatus {
    guard(|| {
        let f = handle(family, "family")?;
        let slot = out(out_spectrum, "out_spectrum")?;
        *slot = ptr::null_mut();
        let spectrum = solve(&f.potential, method, half_width, grid, count)?;
        *slot = Box::into_raw(Box::new(SpecgapSpectrum { spectrum }));
        Ok(())
    })
}

/// # Safety
/// `spectrum` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn specgap_spectrum_free(spectrum: *mut SpecgapSpectrum) {
    if !spectrum.is_null() {
        drop(Box::from_raw(spectrum));
    }
}

/// # Safety
/// `spectrum` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn specgap_spectrum_len(spectrum: *const SpecgapSpectrum) -> usize {
    spectrum.as_ref().map_or(0, |s| s.spectrum.len())
}

/// Eigenvalue `index` and its convergence estimate.
///
/// # Safety
/// `spectrum` must be a live handle; output pointers valid.
#[no_mangle]
pub unsafe extern "C" fn specgap_spectrum_get(
    spectrum: *const SpecgapSpectrum,
    index: usize,
    value: *mut f64,
    conv_est: *mut f64,
) -> SpecgapStatus {
    guard(|| {
        let s = handle(spectrum, "spectrum")?;
        let e = s
            .spectrum
            .eigenvalues
            .get(index)
            .ok_or_else(|| Failure(SpecgapStatus::OutOfRange, format!("index {index} of {}", s.spectrum.len())))?;
        *out(value, "value")? = e.value;
        *out(conv_est, "conv_est")? = e.conv_est;
        Ok(())
    })
}

/// Full `gaps` pipeline on a JSON configuration (same format as the CLI
/// `--config` file); writes the JSON report. `disjoint` receives 1 when every
/// gap avoids the oracle spectrum.
///
/// # Safety
/// `config_json` must be NUL-terminated; output pointers valid.
#[no_mangle]
pub unsafe extern "C" fn specgap_gaps_report(
    config_json: *const c_char,
    out_json: *mut *mut c_char,
    disjoint: *mut i32,
) -> SpecgapStatus {
    guard(|| {
        let text = text(config_json, "config_json")?;
        let json_slot = out(out_json, "out_json")?;
        *json_slot = ptr::null_mut();
        let disjoint = out(disjoint, "disjoint")?;
        let partial: PartialConfig = serde_json::from_str(text).map_err(|e| invalid(format!("config: {e}")))?;
        let cfg = partial.resolve().map_err(|e| invalid(e.to_string()))?;
        let report = cli::gaps(cfg).map_err(|e| match e {
            cli::CliError::Parse(..) => Failure(SpecgapStatus::Parse, e.to_string()),
            _ => invalid(e.to_string()),
        })?;
        *disjoint = i32::from(report.disjoint);
        *json_slot = to_c_string(serde_json::to_string_pretty(&report).expect("reports serialize"));
        Ok(())
    })
}
