//! Per-antenna path terms and the subcarrier frequency response of one user.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::config::SystemConfig;
use super::params::UserChannelParams;

/// Gain of a path at antenna `m` of the array: `alpha * exp(j 2pi m d sin(theta) / lambda)`.
pub fn per_antenna_gain(alpha: Complex64, theta: f64, m: usize, config: &SystemConfig) -> Complex64 {
    alpha * Complex64::cis(TAU * m as f64 * config.d_over_lambda * theta.sin())
}

/// Far-field delay of a path at antenna `m`: `tau + m d sin(theta) / c`.
pub fn per_antenna_delay(tau: f64, theta: f64, m: usize, config: &SystemConfig) -> f64 {
    tau + m as f64 * config.spacing() * theta.sin() / config.speed_of_light
}

/// Row `g_k[n]` of the channel matrix:
/// `g_m = sum_s alpha_s exp(j a m sin(theta_s)) mu_s` with
/// `mu_s = exp(-j 2pi gamma_n tau_s)`.
pub fn freq_response_row(params: &UserChannelParams, config: &SystemConfig) -> Vec<Complex64> {
    let a = config.steering_scale();
    let gamma = config.subcarrier_offset();
    let paths: Vec<(Complex64, f64)> = params
        .gains()
        .iter()
        .zip(params.delays())
        .zip(params.aods())
        .map(|((&alpha, &tau), &theta)| (alpha * Complex64::cis(-TAU * gamma * tau), a * theta.sin()))
        .collect();

    (0..config.antennas)
        .map(|m| {
            let m = m as f64;
            paths.iter().map(|&(z, u)| z * Complex64::cis(m * u)).sum()
        })
        .collect()
}

/// The same row evaluated term by term from the per-antenna gains and
/// delays, `g_m = sum_s alpha_{m,s} exp(-j 2pi gamma_n tau_{m,s})`.
///
/// Algebraically identical to [`freq_response_row`]; kept as an independent
/// route for cross-checking.
pub fn freq_response_row_direct(params: &UserChannelParams, config: &SystemConfig) -> Vec<Complex64> {
    let gamma = config.subcarrier_offset();
    (0..config.antennas)
        .map(|m| {
            params
                .gains()
                .iter()
                .zip(params.delays())
                .zip(params.aods())
                .map(|((&alpha, &tau), &theta)| {
                    let gain = per_antenna_gain(alpha, theta, m, config);
                    let delay = per_antenna_delay(tau, theta, m, config);
                    gain * Complex64::cis(-TAU * gamma * delay)
                })
                .sum()
        })
        .collect()
}
