//! C ABI for the rovib simulator.
//!
//! Handles are opaque pointers created and destroyed here; every function
//! returns an [`RvStatus`] code and writes results through out-pointers.
//! The last error message is kept per-thread and can be copied out with
//! [`rv_last_error_message`]. All functions are panic-safe at the boundary.
//!
//! The matching C header is generated into `include/rovib.h` at build time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use rovib::config::{RawConfig, RunConfig};
use rovib::dynamics::{build_linear_model, LinearModel};
use rovib::error::Error;
use rovib::params::{derive_params, DerivedParams, DetuningMode};
use rovib::spectra::entanglement_measure;
use rovib::steady::{steady_state_feedback, steady_state_fixed_detuning, steady_state_from_branch};
use rovib::sweeps::tune_couplings;

/// Status codes returned by every API call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RvStatus {
    /// Success.
    RvOk = 0,
    /// Invalid physical parameters or malformed configuration.
    RvConfigError = 2,
    /// Numerical failure (solver non-convergence, bistable working point,
    /// degenerate denominator).
    RvNumericalError = 3,
    /// I/O failure.
    RvIoError = 4,
    /// The linearized model is unstable; spectra are refused.
    RvUnstable = 5,
    /// A required pointer argument was null.
    RvNullArgument = 6,
    /// A string argument was not valid UTF-8.
    RvInvalidUtf8 = 7,
    /// Internal panic captured at the boundary.
    RvPanic = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn status_from(err: &Error) -> RvStatus {
    match err {
        Error::InvalidParams(_) | Error::ParseError { .. } | Error::UnknownKey(_) => {
            RvStatus::RvConfigError
        }
        Error::UnstableSystem => RvStatus::RvUnstable,
        Error::Io(_) => RvStatus::RvIoError,
        _ => RvStatus::RvNumericalError,
    }
}

fn fail(err: Error) -> RvStatus {
    let status = status_from(&err);
    set_error(err.to_string());
    status
}

fn guarded(f: impl FnOnce() -> RvStatus + std::panic::UnwindSafe) -> RvStatus {
    match catch_unwind(f) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            RvStatus::RvPanic
        }
    }
}

/// Opaque parameter set: defaults plus an ordered list of key=value
/// assignments, resolved on use exactly like the CLI config path.
pub struct RvParams {
    file_text: Option<String>,
    overrides: Vec<(String, String)>,
}

impl RvParams {
    fn resolve(&self) -> Result<RunConfig, Error> {
        let mut raw = match &self.file_text {
            Some(text) => RawConfig::from_file_text(text)?,
            None => RawConfig::default(),
        };
        for (k, v) in &self.overrides {
            raw.add_override(k, v)?;
        }
        let (cfg, _warnings) = raw.resolve()?;
        Ok(cfg)
    }
}

/// Opaque built model: derived quantities, working point, linear dynamics
/// and the bath temperature the configuration carried.
pub struct RvModel {
    derived: DerivedParams,
    model: LinearModel,
    temperature: f64,
}

/// Flat derived-quantity view (all rates in 1/s, frequencies in rad/s).
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct RvDerived {
    pub omega_c: f64,
    pub mode_index: u64,
    pub wave_number: f64,
    pub moment_of_inertia: f64,
    pub g_z: f64,
    pub g_phi: f64,
    pub gamma: f64,
    pub gamma_z: f64,
    pub gamma_phi: f64,
    pub input_amplitude: f64,
    pub resonance_error: f64,
}

/// One spectral sample of the entanglement measure.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct RvSpectrumPoint {
    pub omega: f64,
    pub entanglement: f64,
    pub v_ru: f64,
    pub v_rv: f64,
    pub commutator_density: f64,
}

/// Outcome of the wavelength/length coupling balancer.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct RvTuneResult {
    pub lambda_new: f64,
    pub cavity_length_new: f64,
    pub mode_index: u64,
    pub residual_imbalance: f64,
    pub delta_lambda: f64,
    pub delta_length: f64,
    pub first_order_delta_lambda: f64,
    /// 1 when the residual met the balance target, 0 when the window was
    /// too narrow (the best candidate is still reported).
    pub target_reached: u8,
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Copies the last error message on this thread into `buf` (truncated to
/// `len−1` bytes, always NUL-terminated). Returns the full message length.
///
/// # Safety
/// `buf` must point to at least `len` writable bytes (or be null, in which
/// case only the length is returned).
#[no_mangle]
pub unsafe extern "C" fn rv_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            unsafe {
                std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf as *mut u8, n);
                *buf.add(n) = 0;
            }
        }
        bytes.len()
    })
}

/// Creates a parameter handle holding the default configuration.
#[no_mangle]
pub extern "C" fn rv_params_new() -> *mut RvParams {
    Box::into_raw(Box::new(RvParams {
        file_text: None,
        overrides: Vec::new(),
    }))
}

/// Creates a parameter handle from flat key=value config text.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rv_params_from_config(
    text: *const c_char,
    out: *mut *mut RvParams,
) -> RvStatus {
    guarded(AssertUnwindSafe(|| {
        if text.is_null() || out.is_null() {
            set_error("null argument");
            return RvStatus::RvNullArgument;
        }
        let Ok(text) = unsafe { CStr::from_ptr(text) }.to_str() else {
            set_error("config text is not valid UTF-8");
            return RvStatus::RvInvalidUtf8;
        };
        let params = RvParams {
            file_text: Some(text.to_string()),
            overrides: Vec::new(),
        };
        // validate eagerly so errors surface here, not at first use
        if let Err(e) = params.resolve() {
            return fail(e);
        }
        unsafe { *out = Box::into_raw(Box::new(params)) };
        RvStatus::RvOk
    }))
}

/// Sets one configuration key (same keys and units as the config file).
///
/// # Safety
/// `params` must come from this library; `key`/`value` must be valid
/// NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn rv_params_set(
    params: *mut RvParams,
    key: *const c_char,
    value: *const c_char,
) -> RvStatus {
    guarded(AssertUnwindSafe(|| {
        if params.is_null() || key.is_null() || value.is_null() {
            set_error("null argument");
            return RvStatus::RvNullArgument;
        }
        let (Ok(key), Ok(value)) = (
            unsafe { CStr::from_ptr(key) }.to_str(),
            unsafe { CStr::from_ptr(value) }.to_str(),
        ) else {
            set_error("key/value is not valid UTF-8");
            return RvStatus::RvInvalidUtf8;
        };
        let p = unsafe { &mut *params };
        p.overrides.push((key.to_string(), value.to_string()));
        match p.resolve() {
            Ok(_) => RvStatus::RvOk,
            Err(e) => {
                p.overrides.pop();
                fail(e)
            }
        }
    }))
}

/// Destroys a parameter handle (null is a no-op).
///
/// # Safety
/// `params` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rv_params_free(params: *mut RvParams) {
    if !params.is_null() {
        drop(unsafe { Box::from_raw(params) });
    }
}

/// Computes the derived quantities into `out`.
///
/// # Safety
/// Valid handle and writable `out` required.
#[no_mangle]
pub unsafe extern "C" fn rv_params_derive(
    params: *const RvParams,
    out: *mut RvDerived,
) -> RvStatus {
    guarded(AssertUnwindSafe(|| {
        if params.is_null() || out.is_null() {
            set_error("null argument");
            return RvStatus::RvNullArgument;
        }
        let cfg = match unsafe { &*params }.resolve() {
            Ok(c) => c,
            Err(e) => return fail(e),
        };
        let d = match derive_params(&cfg.params) {
            Ok((d, _)) => d,
            Err(e) => return fail(e),
        };
        unsafe {
            *out = RvDerived {
                omega_c: d.omega_c,
                mode_index: d.mode_index,
                wave_number: d.wave_number,
                moment_of_inertia: d.moment_of_inertia,
                g_z: d.g_z,
                g_phi: d.g_phi,
                gamma: d.gamma,
                gamma_z: d.gamma_z,
                gamma_phi: d.gamma_phi,
                input_amplitude: d.input_amplitude,
                resonance_error: d.resonance_error,
            };
        }
        RvStatus::RvOk
    }))
}

/// Writes g_z/g_φ into `out`.
///
/// # Safety
/// Valid handle and writable `out` required.
#[no_mangle]
pub unsafe extern "C" fn rv_coupling_ratio(params: *const RvParams, out: *mut f64) -> RvStatus {
    guarded(AssertUnwindSafe(|| {
        if params.is_null() || out.is_null() {
            set_error("null argument");
            return RvStatus::RvNullArgument;
        }
        let cfg = match unsafe { &*params }.resolve() {
            Ok(c) => c,
            Err(e) => return fail(e),
        };
        match derive_params(&cfg.params) {
            Ok((d, _)) => {
                unsafe { *out = rovib::params::coupling_ratio(&d, &cfg.params) };
                RvStatus::RvOk
            }
            Err(e) => fail(e),
        }
    }))
}

fn build_model(cfg: &RunConfig) -> Result<RvModel, Error> {
    let (d, _) = derive_params(&cfg.params)?;
    let s = match cfg.params.detuning_mode {
        DetuningMode::Feedback => steady_state_feedback(&d, cfg.params.detuning_value),
        DetuningMode::Fixed => {
            let branches = steady_state_fixed_detuning(&d, cfg.params.detuning_value)?;
            if branches.len() != 1 {
                return Err(Error::NumericalFailure(
                    "fixed-detuning working point is bistable; use FEEDBACK mode".into(),
                ));
            }
            steady_state_from_branch(&d, cfg.params.detuning_value, &branches[0])
        }
    };
    let model = build_linear_model(&d, &s);
    Ok(RvModel {
        derived: d,
        model,
        temperature: cfg.params.temperature,
    })
}

/// Builds the linearized model at the configured working point. Succeeds
/// even when the model is unstable (query with [`rv_model_is_stable`]);
/// spectral calls on an unstable model fail with `RvUnstable`.
///
/// # Safety
/// Valid handle and writable `out` required.
#[no_mangle]
pub unsafe extern "C" fn rv_model_build(
    params: *const RvParams,
    out: *mut *mut RvModel,
) -> RvStatus {
    guarded(AssertUnwindSafe(|| {
        if params.is_null() || out.is_null() {
            set_error("null argument");
            return RvStatus::RvNullArgument;
        }
        let cfg = match unsafe { &*params }.resolve() {
            Ok(c) => c,
            Err(e) => return fail(e),
        };
        match build_model(&cfg) {
            Ok(m) => {
                unsafe { *out = Box::into_raw(Box::new(m)) };
                RvStatus::RvOk
            }
            Err(e) => fail(e),
        }
    }))
}

/// Destroys a model handle (null is a no-op).
///
/// # Safety
/// `model` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rv_model_free(model: *mut RvModel) {
    if !model.is_null() {
        drop(unsafe { Box::from_raw(model) });
    }
}

/// Writes 1 into `out` when every drift eigenvalue has negative real part.
///
/// # Safety
/// Valid handle and writable `out` required.
#[no_mangle]
pub unsafe extern "C" fn rv_model_is_stable(model: *const RvModel, out: *mut u8) -> RvStatus {
    guarded(AssertUnwindSafe(|| {
        if model.is_null() || out.is_null() {
            set_error("null argument");
            return RvStatus::RvNullArgument;
        }
        unsafe { *out = u8::from((*model).model.stable) };
        RvStatus::RvOk
    }))
}

/// Copies the six drift eigenvalues into `re[0..6]` / `im[0..6]`.
///
/// # Safety
/// `re` and `im` must each point to six writable doubles.
#[no_mangle]
pub unsafe extern "C" fn rv_model_eigenvalues(
    model: *const RvModel,
    re: *mut f64,
    im: *mut f64,
) -> RvStatus {
    guarded(AssertUnwindSafe(|| {
        if model.is_null() || re.is_null() || im.is_null() {
            set_error("null argument");
            return RvStatus::RvNullArgument;
        }
        let m = unsafe { &*model };
        for (i, ev) in m.model.eigenvalues.iter().enumerate() {
            unsafe {
                *re.add(i) = ev.re;
                *im.add(i) = ev.im;
            }
        }
        RvStatus::RvOk
    }))
}

/// Evaluates the entanglement measure at one response frequency, using the
/// configured bath temperature.
///
/// # Safety
/// Valid handle and writable `out` required.
#[no_mangle]
pub unsafe extern "C" fn rv_model_entanglement(
    model: *const RvModel,
    omega: f64,
    out: *mut RvSpectrumPoint,
) -> RvStatus {
    unsafe { rv_model_entanglement_at(model, omega, f64::NAN, out) }
}

/// Like [`rv_model_entanglement`] with an explicit temperature override
/// (pass NaN to use the configured one).
///
/// # Safety
/// Valid handle and writable `out` required.
#[no_mangle]
pub unsafe extern "C" fn rv_model_entanglement_at(
    model: *const RvModel,
    omega: f64,
    temperature: f64,
    out: *mut RvSpectrumPoint,
) -> RvStatus {
    guarded(AssertUnwindSafe(|| {
        if model.is_null() || out.is_null() {
            set_error("null argument");
            return RvStatus::RvNullArgument;
        }
        let m = unsafe { &*model };
        let t = if temperature.is_nan() {
            m.temperature
        } else {
            temperature
        };
        match entanglement_measure(&m.model, &m.derived, omega, t) {
            Ok(p) => {
                unsafe {
                    *out = RvSpectrumPoint {
                        omega: p.omega,
                        entanglement: p.entanglement,
                        v_ru: p.v_ru,
                        v_rv: p.v_rv,
                        commutator_density: p.commutator_density,
                    };
                }
                RvStatus::RvOk
            }
            Err(e) => fail(e),
        }
    }))
}

/// Fills `out[0..points]` with the measure on a linear grid over
/// [omega_min, omega_max].
///
/// # Safety
/// `out` must point to at least `points` writable entries.
#[no_mangle]
pub unsafe extern "C" fn rv_model_spectrum(
    model: *const RvModel,
    omega_min: f64,
    omega_max: f64,
    points: usize,
    out: *mut RvSpectrumPoint,
) -> RvStatus {
    guarded(AssertUnwindSafe(|| {
        if model.is_null() || out.is_null() {
            set_error("null argument");
            return RvStatus::RvNullArgument;
        }
        if !omega_min.is_finite()
            || !omega_max.is_finite()
            || points == 0
            || (points >= 2 && omega_min >= omega_max)
        {
            set_error("spectrum grid needs points >= 1 and finite omega_min < omega_max");
            return RvStatus::RvConfigError;
        }
        let m = unsafe { &*model };
        for i in 0..points {
            let w = if points == 1 {
                omega_min
            } else {
                omega_min + (omega_max - omega_min) * i as f64 / (points - 1) as f64
            };
            match entanglement_measure(&m.model, &m.derived, w, m.temperature) {
                Ok(p) => unsafe {
                    *out.add(i) = RvSpectrumPoint {
                        omega: p.omega,
                        entanglement: p.entanglement,
                        v_ru: p.v_ru,
                        v_rv: p.v_rv,
                        commutator_density: p.commutator_density,
                    };
                },
                Err(e) => return fail(e),
            }
        }
        RvStatus::RvOk
    }))
}

/// Runs the wavelength/length coupling balancer. When the window cannot
/// reach balance the best candidate is written with `target_reached = 0`
/// and the call still returns `RvOk`.
///
/// # Safety
/// Valid handle and writable `out` required.
#[no_mangle]
pub unsafe extern "C" fn rv_tune_couplings(
    params: *const RvParams,
    lambda_window: f64,
    out: *mut RvTuneResult,
) -> RvStatus {
    guarded(AssertUnwindSafe(|| {
        if params.is_null() || out.is_null() {
            set_error("null argument");
            return RvStatus::RvNullArgument;
        }
        let cfg = match unsafe { &*params }.resolve() {
            Ok(c) => c,
            Err(e) => return fail(e),
        };
        let (result, reached) = match tune_couplings(&cfg.params, lambda_window) {
            Ok(t) => (t, 1),
            Err(Error::TargetUnreachable(best)) => (*best, 0),
            Err(e) => return fail(e),
        };
        unsafe {
            *out = RvTuneResult {
                lambda_new: result.lambda_new,
                cavity_length_new: result.cavity_length_new,
                mode_index: result.mode_index,
                residual_imbalance: result.residual_imbalance,
                delta_lambda: result.delta_lambda,
                delta_length: result.delta_length,
                first_order_delta_lambda: result.first_order_delta_lambda,
                target_reached: reached,
            };
        }
        RvStatus::RvOk
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    fn check(status: RvStatus) {
        assert_eq!(status, RvStatus::RvOk, "error: {}", last_error());
    }

    fn last_error() -> String {
        let mut buf = vec![0 as c_char; 512];
        let n = unsafe { rv_last_error_message(buf.as_mut_ptr(), buf.len()) };
        let bytes: Vec<u8> = buf[..n.min(511)].iter().map(|&b| b as u8).collect();
        String::from_utf8_lossy(&bytes).into_owned()
    }

    #[test]
    fn version_is_nul_terminated_semver() {
        let v = unsafe { CStr::from_ptr(rv_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }

    #[test]
    fn default_params_derive_to_design_values() {
        let p = rv_params_new();
        let mut d = RvDerived::default();
        check(unsafe { rv_params_derive(p, &mut d) });
        assert!((d.gamma / 9.418_257_836_544_266e6 - 1.0).abs() < 1e-12);
        assert!((d.g_z / d.g_phi - 1.0).abs() < 2e-4);
        assert_eq!(d.mode_index, 9844);
        unsafe { rv_params_free(p) };
    }

    #[test]
    fn config_text_and_overrides_flow() {
        let text = CString::new("temperature = 0.1\ninput_power = 1e-3\n").unwrap();
        let mut p: *mut RvParams = std::ptr::null_mut();
        check(unsafe { rv_params_from_config(text.as_ptr(), &mut p) });

        let key = CString::new("Q_z").unwrap();
        let val = CString::new("2e6").unwrap();
        check(unsafe { rv_params_set(p, key.as_ptr(), val.as_ptr()) });

        let mut ratio = 0.0;
        check(unsafe { rv_coupling_ratio(p, &mut ratio) });
        assert!((ratio - 1.0).abs() < 2e-4);
        unsafe { rv_params_free(p) };
    }

    #[test]
    fn bad_key_is_rejected_and_reported() {
        let p = rv_params_new();
        let key = CString::new("not_a_key").unwrap();
        let val = CString::new("1").unwrap();
        let st = unsafe { rv_params_set(p, key.as_ptr(), val.as_ptr()) };
        assert_eq!(st, RvStatus::RvConfigError);
        assert!(last_error().contains("not_a_key"));
        // handle still usable afterwards
        let mut d = RvDerived::default();
        check(unsafe { rv_params_derive(p, &mut d) });
        unsafe { rv_params_free(p) };
    }

    #[test]
    fn unknown_config_text_fails_eagerly() {
        let text = CString::new("nope = 3\n").unwrap();
        let mut p: *mut RvParams = std::ptr::null_mut();
        let st = unsafe { rv_params_from_config(text.as_ptr(), &mut p) };
        assert_eq!(st, RvStatus::RvConfigError);
        assert!(p.is_null());
    }

    #[test]
    fn model_pipeline_and_entanglement() {
        let p = rv_params_new();
        let key = CString::new("temperature").unwrap();
        let val = CString::new("0.1").unwrap();
        check(unsafe { rv_params_set(p, key.as_ptr(), val.as_ptr()) });

        let mut m: *mut RvModel = std::ptr::null_mut();
        check(unsafe { rv_model_build(p, &mut m) });

        let mut stable = 0u8;
        check(unsafe { rv_model_is_stable(m, &mut stable) });
        assert_eq!(stable, 1);

        let mut re = [0.0; 6];
        let mut im = [0.0; 6];
        check(unsafe { rv_model_eigenvalues(m, re.as_mut_ptr(), im.as_mut_ptr()) });
        assert!(re.iter().all(|&x| x < 0.0));

        // the arithmetic-mean needle is entangled at 0.1 K
        let omega = 2.0 * std::f64::consts::PI * 1e6;
        let mut pt = RvSpectrumPoint::default();
        check(unsafe { rv_model_entanglement(m, omega, &mut pt) });
        assert!(pt.entanglement < 1.0, "E = {}", pt.entanglement);
        assert!(pt.v_ru > 0.0 && pt.v_rv > 0.0 && pt.commutator_density > 0.0);

        // explicit-temperature variant matches the configured-path shape
        let mut pt300 = RvSpectrumPoint::default();
        check(unsafe { rv_model_entanglement_at(m, omega, 300.0, &mut pt300) });
        assert!(pt300.entanglement > pt.entanglement);

        unsafe { rv_model_free(m) };
        unsafe { rv_params_free(p) };
    }

    #[test]
    fn unstable_model_builds_but_refuses_spectra() {
        let p = rv_params_new();
        let key = CString::new("detuning_value").unwrap();
        let val = CString::new("-6.283185307179586e6").unwrap();
        check(unsafe { rv_params_set(p, key.as_ptr(), val.as_ptr()) });

        let mut m: *mut RvModel = std::ptr::null_mut();
        check(unsafe { rv_model_build(p, &mut m) });
        let mut stable = 1u8;
        check(unsafe { rv_model_is_stable(m, &mut stable) });
        assert_eq!(stable, 0);

        let mut pt = RvSpectrumPoint::default();
        let st = unsafe { rv_model_entanglement(m, 6.28e6, &mut pt) };
        assert_eq!(st, RvStatus::RvUnstable);
        assert!(last_error().contains("unstable"));

        unsafe { rv_model_free(m) };
        unsafe { rv_params_free(p) };
    }

    #[test]
    fn spectrum_buffer_fill() {
        let p = rv_params_new();
        let mut m: *mut RvModel = std::ptr::null_mut();
        check(unsafe { rv_model_build(p, &mut m) });

        let w0 = 0.95 * 2.0 * std::f64::consts::PI * 1e6;
        let w1 = 1.05 * 2.0 * std::f64::consts::PI * 1e6;
        let mut pts = vec![RvSpectrumPoint::default(); 32];
        check(unsafe { rv_model_spectrum(m, w0, w1, pts.len(), pts.as_mut_ptr()) });
        assert_eq!(pts[0].omega, w0);
        assert_eq!(pts[31].omega, w1);
        assert!(pts.iter().all(|pt| pt.entanglement.is_finite()));

        unsafe { rv_model_free(m) };
        unsafe { rv_params_free(p) };
    }

    #[test]
    fn tuner_through_ffi() {
        let p = rv_params_new();
        let key = CString::new("omega_phi").unwrap();
        // 2π·(1 MHz + 10 Hz)
        let val = CString::new("6.283248139032658e6").unwrap();
        check(unsafe { rv_params_set(p, key.as_ptr(), val.as_ptr()) });

        let mut t = RvTuneResult::default();
        check(unsafe { rv_tune_couplings(p, 5e-9, &mut t) });
        assert_eq!(t.target_reached, 1);
        assert!(t.residual_imbalance <= 1e-6);
        assert_eq!(
            t.cavity_length_new,
            t.mode_index as f64 * t.lambda_new / 2.0
        );

        // a hopeless window still reports its best candidate
        let mut narrow = RvTuneResult::default();
        check(unsafe { rv_tune_couplings(p, 1e-15, &mut narrow) });
        assert_eq!(narrow.target_reached, 0);
        assert!(narrow.residual_imbalance > 1e-6);

        unsafe { rv_params_free(p) };
    }

    #[test]
    fn null_arguments_are_caught() {
        let mut d = RvDerived::default();
        assert_eq!(
            unsafe { rv_params_derive(std::ptr::null(), &mut d) },
            RvStatus::RvNullArgument
        );
        let p = rv_params_new();
        assert_eq!(
            unsafe { rv_params_derive(p, std::ptr::null_mut()) },
            RvStatus::RvNullArgument
        );
        unsafe { rv_params_free(p) };
        unsafe { rv_params_free(std::ptr::null_mut()) }; // no-op
        unsafe { rv_model_free(std::ptr::null_mut()) }; // no-op
    }
}
