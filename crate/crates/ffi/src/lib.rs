//! C ABI over the `sparse_mimo` crate.
//!
//! Every function returns a [`SmimoStatus`] and writes results through out
//! pointers. Channel matrices are opaque `SmimoChannel` handles created by
//! `smimo_channel_new` / `smimo_gaussian_channel_new` and released with
//! `smimo_channel_free`. After a non-OK status, `smimo_last_error_message`
//! describes the failure on the calling thread.
//!
//! The header `include/sparse_mimo.h` is generated by the build script.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sparse_mimo::analysis::{analytical_variance_cn, capacity, eigen_summary, mc_moments};
use sparse_mimo::channel::{build_channel_matrix, gaussian_baseline, ChannelMatrix, GainMode, SystemConfig};
use sparse_mimo::numkernel::{bessel_j0, RngStream};
use sparse_mimo::Error;

/// Status codes returned by every `smimo_*` function.
#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmimoStatus {
    Ok = 0,
    NullPointer = 1,
    /// Invalid configuration or argument combination.
    Config = 2,
    /// Argument outside the mathematical domain of the function.
    Domain = 3,
    /// A numerical contract was violated (non-convergence, rank loss, ...).
    Numerical = 4,
    /// Output buffer shorter than required.
    BufferTooSmall = 5,
    /// A Rust panic was caught at the boundary.
    Panic = 6,
}

/// Gain draw for path amplitudes.
pub const SMIMO_GAIN_COMPLEX_GAUSSIAN: i32 = 0;
pub const SMIMO_GAIN_NORMALIZED_ENERGY: i32 = 1;

/// Plain-data mirror of the system configuration. Large-scale fading is
/// taken as 1 for every user.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SmimoSystemParams {
    pub antennas: usize,
    pub users: usize,
    pub carrier_hz: f64,
    pub bandwidth_hz: f64,
    pub ofdm_size: usize,
    pub guard_len: usize,
    pub paths: usize,
    pub d_over_lambda: f64,
    /// 1-based subcarrier index.
    pub subcarrier: usize,
    /// `SMIMO_GAIN_COMPLEX_GAUSSIAN` or `SMIMO_GAIN_NORMALIZED_ENERGY`.
    pub gain_mode: i32,
    pub speed_of_light: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SmimoEigenSummary {
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// `INFINITY` when `lambda_min` is zero.
    pub condition_number: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SmimoMoments {
    pub mean_re: f64,
    pub mean_im: f64,
    pub variance: f64,
    pub second_moment: f64,
    pub std_error: f64,
    pub trials: usize,
}

/// Opaque channel matrix handle.
pub struct SmimoChannel {
    inner: ChannelMatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SmimoStatus {
    match e {
        Error::Domain(_) => SmimoStatus::Domain,
        e if e.is_config() => SmimoStatus::Config,
        _ => SmimoStatus::Numerical,
    }
}

fn fail(status: SmimoStatus, msg: &str) -> SmimoStatus {
    set_last_error(msg);
    status
}

/// Runs `f`, mapping errors and panics to status codes.
fn guard(f: impl FnOnce() -> Result<(), SmimoStatus>) -> SmimoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            SmimoStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => fail(SmimoStatus::Panic, "panic caught at FFI boundary"),
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, SmimoStatus>;
}

impl<T> OrStatus<T> for sparse_mimo::Result<T> {
    fn or_status(self) -> Result<T, SmimoStatus> {
        self.map_err(|e| fail(status_of(&e), &e.to_string()))
    }
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, SmimoStatus> {
    p.as_ref().ok_or_else(|| fail(SmimoStatus::NullPointer, "null pointer argument"))
}

unsafe fn deref_mut<'a, T>(p: *mut T) -> Result<&'a mut T, SmimoStatus> {
    p.as_mut().ok_or_else(|| fail(SmimoStatus::NullPointer, "null pointer argument"))
}

impl SmimoSystemParams {
    fn from_config(c: &SystemConfig) -> Self {
        Self {
            antennas: c.antennas,
            users: c.users,
            carrier_hz: c.carrier_hz,
            bandwidth_hz: c.bandwidth_hz,
            ofdm_size: c.ofdm_size,
            guard_len: c.guard_len,
            paths: c.paths,
            d_over_lambda: c.d_over_lambda,
            subcarrier: c.subcarrier,
            gain_mode: match c.gain_mode {
                GainMode::ComplexGaussian => SMIMO_GAIN_COMPLEX_GAUSSIAN,
                GainMode::NormalizedEnergy => SMIMO_GAIN_NORMALIZED_ENERGY,
            },
            speed_of_light: c.speed_of_light,
        }
    }

    fn to_config(self) -> Result<SystemConfig, SmimoStatus> {
        let gain_mode = match self.gain_mode {
            SMIMO_GAIN_COMPLEX_GAUSSIAN => GainMode::ComplexGaussian,
            SMIMO_GAIN_NORMALIZED_ENERGY => GainMode::NormalizedEnergy,
            other => return Err(fail(SmimoStatus::Config, &format!("unknown gain_mode {other}"))),
        };
        let config = SystemConfig {
            antennas: self.antennas,
            users: self.users,
            carrier_hz: self.carrier_hz,
            bandwidth_hz: self.bandwidth_hz,
            ofdm_size: self.ofdm_size,
            guard_len: self.guard_len,
            paths: self.paths,
            d_over_lambda: self.d_over_lambda,
            subcarrier: self.subcarrier,
            gain_mode,
            speed_of_light: self.speed_of_light,
            beta: None,
        };
        config.validate().or_status()?;
        Ok(config)
    }
}

/// Static description of a status code. Unknown codes map to
/// "unknown status". Never returns NULL.
#[no_mangle]
pub extern "C" fn smimo_status_string(status: i32) -> *const c_char {
    let s: &'static [u8] = match status {
        0 => b"ok\0",
        1 => b"null pointer argument\0",
        2 => b"invalid configuration\0",
        3 => b"argument outside domain\0",
        4 => b"numerical contract violated\0",
        5 => b"buffer too small\0",
        6 => b"internal panic\0",
        _ => b"unknown status\0",
    };
    s.as_ptr().cast()
}

/// Message for the last failure on this thread, or "" after a success. The
/// pointer stays valid until the next `smimo_*` call on the same thread.
#[no_mangle]
pub extern "C" fn smimo_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Fills `out` with the library defaults.
///
/// # Safety
/// `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn smimo_system_params_default(out: *mut SmimoSystemParams) -> SmimoStatus {
    guard(|| {
        *deref_mut(out)? = SmimoSystemParams::from_config(&SystemConfig::default());
        Ok(())
    })
}

/// `J0(x)`.
///
/// # Safety
/// `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn smimo_bessel_j0(x: f64, out: *mut f64) -> SmimoStatus {
    guard(|| {
        let out = deref_mut(out)?;
        *out = bessel_j0(x).or_status()?;
        Ok(())
    })
}

/// Closed-form variance of the normalized inner product for complex
/// Gaussian gains.
///
/// # Safety
/// `params` must be NULL or point to a valid struct; `out` must be NULL or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn smimo_analytical_variance_cn(
    params: *const SmimoSystemParams,
    out: *mut f64,
) -> SmimoStatus {
    guard(|| {
        let config = deref(params)?.to_config()?;
        let out = deref_mut(out)?;
        *out = analytical_variance_cn(&config).or_status()?;
        Ok(())
    })
}

/// Monte Carlo moments of `g_1 g_2^H / M` over `trials` realizations.
///
/// # Safety
/// `params` must be NULL or point to a valid struct; `out` must be NULL or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn smimo_mc_moments(
    params: *const SmimoSystemParams,
    trials: usize,
    seed: u64,
    out: *mut SmimoMoments,
) -> SmimoStatus {
    guard(|| {
        let config = deref(params)?.to_config()?;
        let out = deref_mut(out)?;
        let est = mc_moments(&config, trials, seed).or_status()?;
        *out = SmimoMoments {
            mean_re: est.mean.re,
            mean_im: est.mean.im,
            variance: est.variance,
            second_moment: est.second_moment,
            std_error: est.std_error(),
            trials: est.trials,
        };
        Ok(())
    })
}

/// Sparse channel matrix drawn from stream `(seed, stream)`.
///
/// # Safety
/// `params` must be NULL or point to a valid struct; `out` must be NULL or
/// valid for writes. The handle written to `*out` must be released with
/// `smimo_channel_free`.
#[no_mangle]
pub unsafe extern "C" fn smimo_channel_new(
    params: *const SmimoSystemParams,
    seed: u64,
    stream: u64,
    out: *mut *mut SmimoChannel,
) -> SmimoStatus {
    guard(|| {
        let config = deref(params)?.to_config()?;
        let out = deref_mut(out)?;
        *out = ptr::null_mut();
        let inner = build_channel_matrix(&config, &RngStream::new(seed, stream)).or_status()?;
        *out = Box::into_raw(Box::new(SmimoChannel { inner }));
        Ok(())
    })
}

/// `users x antennas` matrix with i.i.d. `CN(0, 1)` entries.
///
/// # Safety
/// `out` must be NULL or valid for writes. The handle must be released with
/// `smimo_channel_free`.
#[no_mangle]
pub unsafe extern "C" fn smimo_gaussian_channel_new(
    antennas: usize,
    users: usize,
    seed: u64,
    stream: u64,
    out: *mut *mut SmimoChannel,
) -> SmimoStatus {
    guard(|| {
        let out = deref_mut(out)?;
        *out = ptr::null_mut();
        if antennas == 0 || users == 0 {
            return Err(fail(SmimoStatus::Config, "antennas and users must be positive"));
        }
        let inner = gaussian_baseline(antennas, users, &RngStream::new(seed, stream));
        *out = Box::into_raw(Box::new(SmimoChannel { inner }));
        Ok(())
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `channel` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn smimo_channel_free(channel: *mut SmimoChannel) {
    if !channel.is_null() {
        drop(Box::from_raw(channel));
    }
}

/// Number of users (rows) and antennas (columns).
///
/// # Safety
/// `channel` must be NULL or a live handle; `rows` and `cols` must be NULL
/// or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn smimo_channel_shape(
    channel: *const SmimoChannel,
    rows: *mut usize,
    cols: *mut usize,
) -> SmimoStatus {
    guard(|| {
        let ch = deref(channel)?;
        let (rows, cols) = (deref_mut(rows)?, deref_mut(cols)?);
        *rows = ch.inner.rows();
        *cols = ch.inner.cols();
        Ok(())
    })
}

/// Copies the entries row-major as interleaved `(re, im)` pairs. `len` is
/// the capacity of `buffer` in doubles and must be at least
/// `2 * rows * cols`.
///
/// # Safety
/// `channel` must be NULL or a live handle; `buffer` must be NULL or valid
/// for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn smimo_channel_copy_entries(
    channel: *const SmimoChannel,
    buffer: *mut f64,
    len: usize,
) -> SmimoStatus {
    guard(|| {
        let ch = deref(channel)?;
        if buffer.is_null() {
            return Err(fail(SmimoStatus::NullPointer, "null buffer"));
        }
        let entries = ch.inner.entries();
        let need = 2 * entries.len();
        if len < need {
            return Err(fail(
                SmimoStatus::BufferTooSmall,
                &format!("buffer holds {len} doubles, need {need}"),
            ));
        }
        let out = std::slice::from_raw_parts_mut(buffer, need);
        for (pair, z) in out.chunks_exact_mut(2).zip(entries) {
            pair[0] = z.re;
            pair[1] = z.im;
        }
        Ok(())
    })
}

/// Extreme eigenvalues and condition number of `G G^H`.
///
/// # Safety
/// `channel` must be NULL or a live handle; `out` must be NULL or valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn smimo_channel_eigen_summary(
    channel: *const SmimoChannel,
    out: *mut SmimoEigenSummary,
) -> SmimoStatus {
    guard(|| {
        let ch = deref(channel)?;
        let out = deref_mut(out)?;
        let s = eigen_summary(&ch.inner).or_status()?;
        *out = SmimoEigenSummary {
            lambda_min: s.lambda_min,
            lambda_max: s.lambda_max,
            condition_number: s.condition_number,
        };
        Ok(())
    })
}

/// Sum capacity in bits per channel use. `beta` may be NULL (all ones);
/// otherwise it holds `beta_len` weights, one per row.
///
/// # Safety
/// `channel` must be NULL or a live handle; `beta` must be NULL or valid for
/// `beta_len` reads; `out_bits` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn smimo_channel_capacity(
    channel: *const SmimoChannel,
    rho_d: f64,
    beta: *const f64,
    beta_len: usize,
    out_bits: *mut f64,
) -> SmimoStatus {
    guard(|| {
        let ch = deref(channel)?;
        let out = deref_mut(out_bits)?;
        let weights = if beta.is_null() {
            vec![1.0; ch.inner.rows()]
        } else {
            std::slice::from_raw_parts(beta, beta_len).to_vec()
        };
        *out = capacity(&ch.inner, rho_d, &weights).or_status()?.capacity_bits;
        Ok(())
    })
}
