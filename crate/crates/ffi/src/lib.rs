//! C ABI over the `spirallike` crate.
//!
//! Functions are exposed through an opaque [`SplFunction`] handle created by
//! one of the `spl_function_*` constructors and released with
//! [`spl_function_free`]. Every fallible call returns an [`SplStatus`]; on
//! failure a description is available from [`spl_last_error_message`] on the
//! same thread. Results are written through caller-provided out-pointers and
//! left untouched on failure. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use num_complex::Complex64;
use spirallike::analysis::{
    beta_trace, default_gap_threshold, estimate_max_jump, growth_exponent, max_modulus,
    spirallikeness_margin, PolarGrid,
};
use spirallike::correspondence::spirallike_of;
use spirallike::gallery::{self, ClosedFormFunction, HansenParams};
use spirallike::geometry::{self, SpiralAngle};
use spirallike::{BoundaryMeasure, Error, SpiralFunction};

/// Status codes. Values 2–4 match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplStatus {
    Ok = 0,
    /// Invalid parameters, measure, or JSON.
    InvalidInput = 2,
    /// Point outside the domain, or a numerical refinement failure.
    Domain = 3,
    /// Requested accuracy could not be met.
    Accuracy = 4,
    NullPointer = 5,
    InvalidUtf8 = 6,
    /// An internal panic was caught.
    Panic = 7,
}

/// Gallery selectors for [`spl_function_gallery`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplGallery {
    Identity = 0,
    Koebe = 1,
    G0 = 2,
}

/// A complex number.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplComplex {
    pub re: f64,
    pub im: f64,
}

impl From<SplComplex> for Complex64 {
    fn from(z: SplComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

impl From<Complex64> for SplComplex {
    fn from(z: Complex64) -> Self {
        SplComplex { re: z.re, im: z.im }
    }
}

/// Opaque function handle.
pub struct SplFunction {
    inner: SpiralFunction,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SplStatus {
    match e.exit_code() {
        2 => SplStatus::InvalidInput,
        4 => SplStatus::Accuracy,
        _ => SplStatus::Domain,
    }
}

/// Runs `body`, converting errors and panics into status codes.
fn guard<F>(body: F) -> SplStatus
where
    F: FnOnce() -> Result<(), SplStatus>,
{
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SplStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic".into());
            SplStatus::Panic
        }
    }
}

fn fail(e: Error) -> SplStatus {
    let status = status_of(&e);
    set_error(e.to_string());
    status
}

fn null(what: &str) -> SplStatus {
    set_error(format!("{what} is null"));
    SplStatus::NullPointer
}

fn angle(lambda: f64) -> Result<SpiralAngle, SplStatus> {
    SpiralAngle::new(lambda).map_err(fail)
}

/// # Safety
/// `out` must be null or valid for writes.
unsafe fn emit(out: *mut *mut SplFunction, f: SpiralFunction) -> Result<(), SplStatus> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(SplFunction { inner: f }));
    Ok(())
}

/// # Safety
/// `f` must be null or a live handle.
unsafe fn handle<'a>(f: *const SplFunction) -> Result<&'a SpiralFunction, SplStatus> {
    f.as_ref().map(|h| &h.inner).ok_or_else(|| null("function handle"))
}

/// # Safety
/// `p` must be null or valid for writes.
unsafe fn write<T>(p: *mut T, value: T) -> Result<(), SplStatus> {
    if p.is_null() {
        return Err(null("output pointer"));
    }
    *p = value;
    Ok(())
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn spl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds the λ-spirallike function of a measure given as JSON text
/// `{"atoms": [{"t": .., "jump": ..}], "density_knots": [{"t": .., "value": ..}]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spl_function_from_measure_json(
    json: *const c_char,
    lambda: f64,
    out: *mut *mut SplFunction,
) -> SplStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json).to_str().map_err(|_| {
            set_error("measure text is not valid UTF-8".into());
            SplStatus::InvalidUtf8
        })?;
        let m = BoundaryMeasure::from_json(text).map_err(fail)?;
        emit(out, SpiralFunction::from_measure(m, angle(lambda)?))
    })
}

/// Builds the λ-spirallike function of a purely atomic measure.
///
/// # Safety
/// `positions` and `jumps` must point to `count` doubles each; `out` must be
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spl_function_from_atoms(
    positions: *const f64,
    jumps: *const f64,
    count: usize,
    lambda: f64,
    out: *mut *mut SplFunction,
) -> SplStatus {
    guard(|| {
        if positions.is_null() || jumps.is_null() {
            return Err(null("atom arrays"));
        }
        let pairs: Vec<(f64, f64)> = slice::from_raw_parts(positions, count)
            .iter()
            .copied()
            .zip(slice::from_raw_parts(jumps, count).iter().copied())
            .collect();
        let m = BoundaryMeasure::from_atoms(&pairs).map_err(fail)?;
        emit(out, SpiralFunction::from_measure(m, angle(lambda)?))
    })
}

/// The λ-spirallike partner of a gallery function.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spl_function_gallery(
    kind: SplGallery,
    lambda: f64,
    out: *mut *mut SplFunction,
) -> SplStatus {
    guard(|| {
        let g = match kind {
            SplGallery::Identity => SpiralFunction::identity(),
            SplGallery::Koebe => SpiralFunction::koebe(),
            SplGallery::G0 => SpiralFunction::from_closed_form(ClosedFormFunction::G0),
        };
        emit(out, spirallike_of(&g, angle(lambda)?).map_err(fail)?)
    })
}

/// The λ-spirallike partner of the Hansen function with the given parameters.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spl_function_hansen(
    alpha: f64,
    beta_exp: f64,
    c: f64,
    lambda: f64,
    out: *mut *mut SplFunction,
) -> SplStatus {
    guard(|| {
        let params = HansenParams::new(alpha, beta_exp, c).map_err(fail)?;
        let g = SpiralFunction::from_closed_form(gallery::hansen_build(params));
        emit(out, spirallike_of(&g, angle(lambda)?).map_err(fail)?)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `f` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spl_function_free(f: *mut SplFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// `f(z)`.
///
/// # Safety
/// `f` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spl_evaluate(f: *const SplFunction, z: SplComplex, out: *mut SplComplex) -> SplStatus {
    guard(|| write(out, handle(f)?.evaluate(z.into()).map_err(fail)?.into()))
}

/// `log(f(z)/z)`, the branch vanishing at 0.
///
/// # Safety
/// `f` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spl_log_f_over_z(
    f: *const SplFunction,
    z: SplComplex,
    out: *mut SplComplex,
) -> SplStatus {
    guard(|| write(out, handle(f)?.log_f_over_z(z.into()).map_err(fail)?.into()))
}

/// `z f'(z)/f(z)`.
///
/// # Safety
/// `f` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spl_log_derivative(
    f: *const SplFunction,
    z: SplComplex,
    out: *mut SplComplex,
) -> SplStatus {
    guard(|| write(out, handle(f)?.log_derivative(z.into()).map_err(fail)?.into()))
}

/// Principal λ-argument of a nonzero `w`, in `(-π, π]`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spl_arg_lambda(w: SplComplex, lambda: f64, out: *mut f64) -> SplStatus {
    guard(|| write(out, geometry::arg_lambda(w.into(), &angle(lambda)?).map_err(fail)?))
}

/// `M(r, f)` from `coarse` angles plus local refinement.
///
/// # Safety
/// `f` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spl_max_modulus(f: *const SplFunction, r: f64, coarse: usize, out: *mut f64) -> SplStatus {
    guard(|| write(out, max_modulus(handle(f)?, r, coarse).map_err(fail)?.value))
}

/// Minimum of `Re(e^{-iλ} zf'/f)` over a polar grid, using the handle's λ.
///
/// # Safety
/// `f` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spl_spirallikeness_margin(
    f: *const SplFunction,
    radial: usize,
    angular: usize,
    r_max: f64,
    out: *mut f64,
) -> SplStatus {
    guard(|| {
        let f = handle(f)?;
        let grid = PolarGrid::new(radial, angular, r_max).map_err(fail)?;
        write(out, spirallikeness_margin(f, f.angle(), &grid).map_err(fail)?)
    })
}

/// Taylor coefficients `a_1..a_{n_max}` written to `out[0..n_max]`.
///
/// # Safety
/// `f` must be a live handle and `out` valid for `n_max` writes.
#[no_mangle]
pub unsafe extern "C" fn spl_taylor_coefficients(
    f: *const SplFunction,
    n_max: usize,
    radius: f64,
    out: *mut SplComplex,
) -> SplStatus {
    guard(|| {
        let f = handle(f)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let coeffs = f.taylor_coefficients(n_max, radius).map_err(fail)?;
        let dst = slice::from_raw_parts_mut(out, n_max);
        for (d, c) in dst.iter_mut().zip(coeffs) {
            *d = c.into();
        }
        Ok(())
    })
}

/// `Q(θ)` for `0 < θ < π/2`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spl_q_function(theta: f64, out: *mut f64) -> SplStatus {
    guard(|| write(out, gallery::q_function(theta).map_err(fail)?))
}

/// Samples the boundary function on `t_grid` points at radius `r`.
/// Angles go to `t_out`, values to `beta_out`.
///
/// # Safety
/// `f` must be a live handle; `t_out` and `beta_out` must be valid for
/// `t_grid` writes each.
#[no_mangle]
pub unsafe extern "C" fn spl_beta_trace(
    f: *const SplFunction,
    t_grid: usize,
    r: f64,
    t_out: *mut f64,
    beta_out: *mut f64,
) -> SplStatus {
    guard(|| {
        let f = handle(f)?;
        if t_out.is_null() || beta_out.is_null() {
            return Err(null("trace output"));
        }
        let trace = beta_trace(f, f.angle(), t_grid, &[r]).map_err(fail)?;
        slice::from_raw_parts_mut(t_out, t_grid).copy_from_slice(&trace.t_samples);
        slice::from_raw_parts_mut(beta_out, t_grid).copy_from_slice(&trace.beta_values);
        Ok(())
    })
}

/// Largest boundary jump estimated from a trace on `t_grid` points at radius
/// `r`, with its location and midpoint value.
///
/// # Safety
/// `f` must be a live handle; the three outputs must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spl_estimate_max_jump(
    f: *const SplFunction,
    t_grid: usize,
    r: f64,
    jump: *mut f64,
    location: *mut f64,
    center: *mut f64,
) -> SplStatus {
    guard(|| {
        let f = handle(f)?;
        if jump.is_null() || location.is_null() || center.is_null() {
            return Err(null("jump output"));
        }
        let trace = beta_trace(f, f.angle(), t_grid, &[r]).map_err(fail)?;
        let est = estimate_max_jump(&trace, default_gap_threshold(&trace)).map_err(fail)?;
        *jump = est.jump;
        *location = est.location;
        *center = est.center;
        Ok(())
    })
}

/// Growth exponents `log(M/r)/log(1/(1-r))` for `count ≥ 3` increasing radii,
/// written to `exponents_out`, and the predicted limit to `q0_out`.
///
/// # Safety
/// `f` must be a live handle; `radii` and `exponents_out` must be valid for
/// `count` elements; `q0_out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spl_growth_exponent(
    f: *const SplFunction,
    radii: *const f64,
    count: usize,
    exponents_out: *mut f64,
    q0_out: *mut f64,
) -> SplStatus {
    guard(|| {
        let f = handle(f)?;
        if radii.is_null() || exponents_out.is_null() || q0_out.is_null() {
            return Err(null("growth arrays"));
        }
        let schedule = slice::from_raw_parts(radii, count);
        let report = growth_exponent(f, f.angle(), schedule).map_err(fail)?;
        slice::from_raw_parts_mut(exponents_out, count).copy_from_slice(&report.exponents());
        *q0_out = report.predicted_q0;
        Ok(())
    })
}
