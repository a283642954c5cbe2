use std::ffi::CStr;
use std::ptr;

use sparse_mimo::channel::{build_channel_matrix, SystemConfig};
use sparse_mimo::numkernel::RngStream;
use sparse_mimo_ffi::*;

fn defaults() -> SmimoSystemParams {
    let mut p = std::mem::MaybeUninit::<SmimoSystemParams>::uninit();
    assert_eq!(unsafe { smimo_system_params_default(p.as_mut_ptr()) }, SmimoStatus::Ok);
    unsafe { p.assume_init() }
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(smimo_last_error_message()) }.to_string_lossy().into_owned()
}

#[test]
fn defaults_match_library() {
    let p = defaults();
    let c = SystemConfig::default();
    assert_eq!(p.antennas, c.antennas);
    assert_eq!(p.paths, c.paths);
    assert_eq!(p.d_over_lambda, c.d_over_lambda);
    assert_eq!(p.gain_mode, SMIMO_GAIN_COMPLEX_GAUSSIAN);
}

#[test]
fn bessel_values_and_domain() {
    let mut v = 0.0;
    assert_eq!(unsafe { smimo_bessel_j0(0.0, &mut v) }, SmimoStatus::Ok);
    assert_eq!(v, 1.0);
    assert_eq!(unsafe { smimo_bessel_j0(2.404_825_557_695_773, &mut v) }, SmimoStatus::Ok);
    assert!(v.abs() < 1e-14);
    assert_eq!(unsafe { smimo_bessel_j0(f64::NAN, &mut v) }, SmimoStatus::Domain);
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { smimo_bessel_j0(1.0, ptr::null_mut()) }, SmimoStatus::NullPointer);
}

#[test]
fn channel_handle_round_trip() {
    let mut p = defaults();
    p.antennas = 16;
    p.users = 3;
    let mut h: *mut SmimoChannel = ptr::null_mut();
    assert_eq!(unsafe { smimo_channel_new(&p, 7, 2, &mut h) }, SmimoStatus::Ok);
    assert!(!h.is_null());

    let (mut rows, mut cols) = (0, 0);
    assert_eq!(unsafe { smimo_channel_shape(h, &mut rows, &mut cols) }, SmimoStatus::Ok);
    assert_eq!((rows, cols), (3, 16));

    let mut short = vec![0.0; 10];
    assert_eq!(
        unsafe { smimo_channel_copy_entries(h, short.as_mut_ptr(), short.len()) },
        SmimoStatus::BufferTooSmall
    );
    let mut buf = vec![0.0; 2 * 3 * 16];
    assert_eq!(unsafe { smimo_channel_copy_entries(h, buf.as_mut_ptr(), buf.len()) }, SmimoStatus::Ok);

    let cfg = SystemConfig {
        antennas: 16,
        users: 3,
        ..SystemConfig::default()
    };
    let want = build_channel_matrix(&cfg, &RngStream::new(7, 2)).unwrap();
    for (pair, z) in buf.chunks_exact(2).zip(want.entries()) {
        assert_eq!((pair[0], pair[1]), (z.re, z.im));
    }

    let mut s = SmimoEigenSummary::default();
    assert_eq!(unsafe { smimo_channel_eigen_summary(h, &mut s) }, SmimoStatus::Ok);
    assert!(s.lambda_min >= 0.0 && s.lambda_max >= s.lambda_min);

    let mut bits = 0.0;
    assert_eq!(unsafe { smimo_channel_capacity(h, 10.0, ptr::null(), 0, &mut bits) }, SmimoStatus::Ok);
    assert!(bits > 0.0);
    let beta = [1.0, 1.0];
    assert_eq!(
        unsafe { smimo_channel_capacity(h, 10.0, beta.as_ptr(), beta.len(), &mut bits) },
        SmimoStatus::Config
    );
    unsafe { smimo_channel_free(h) };
    unsafe { smimo_channel_free(ptr::null_mut()) };
}

#[test]
fn gaussian_handle() {
    let mut h: *mut SmimoChannel = ptr::null_mut();
    assert_eq!(unsafe { smimo_gaussian_channel_new(8, 2, 1, 0, &mut h) }, SmimoStatus::Ok);
    let mut s = SmimoEigenSummary::default();
    assert_eq!(unsafe { smimo_channel_eigen_summary(h, &mut s) }, SmimoStatus::Ok);
    assert!(s.condition_number >= 1.0);
    unsafe { smimo_channel_free(h) };
    assert_eq!(unsafe { smimo_gaussian_channel_new(0, 2, 1, 0, &mut h) }, SmimoStatus::Config);
    assert!(h.is_null());
}

#[test]
fn invalid_params_are_config_errors() {
    let mut p = defaults();
    p.paths = 0;
    let mut h: *mut SmimoChannel = ptr::null_mut();
    assert_eq!(unsafe { smimo_channel_new(&p, 0, 0, &mut h) }, SmimoStatus::Config);
    assert!(h.is_null());
    assert!(last_error().contains('S'));
    let mut p = defaults();
    p.gain_mode = 9;
    let mut v = 0.0;
    assert_eq!(unsafe { smimo_analytical_variance_cn(&p, &mut v) }, SmimoStatus::Config);
    assert_eq!(unsafe { smimo_analytical_variance_cn(ptr::null(), &mut v) }, SmimoStatus::NullPointer);
}

#[test]
fn moments_through_the_abi() {
    let mut p = defaults();
    p.antennas = 16;
    let mut v = 0.0;
    assert_eq!(unsafe { smimo_analytical_variance_cn(&p, &mut v) }, SmimoStatus::Ok);
    let mut m = SmimoMoments::default();
    assert_eq!(unsafe { smimo_mc_moments(&p, 4000, 3, &mut m) }, SmimoStatus::Ok);
    assert_eq!(m.trials, 4000);
    assert!((m.variance - v).abs() / v < 0.1, "{} vs {v}", m.variance);
    assert_eq!(unsafe { smimo_mc_moments(&p, 1, 3, &mut m) }, SmimoStatus::Config);

    p.gain_mode = SMIMO_GAIN_NORMALIZED_ENERGY;
    assert_eq!(unsafe { smimo_analytical_variance_cn(&p, &mut v) }, SmimoStatus::Config);
}

#[test]
fn status_strings() {
    for code in 0..=7 {
        let s = unsafe { CStr::from_ptr(smimo_status_string(code)) };
        assert!(!s.to_bytes().is_empty());
    }
    let ok = unsafe { CStr::from_ptr(smimo_status_string(SmimoStatus::Ok as i32)) };
    assert_eq!(ok.to_str().unwrap(), "ok");
}
