//! Normalized inner products between user channels and their Monte Carlo
//! moments.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::channel::{freq_response_row, sample_user_params, GainMode, SystemConfig};
use crate::numkernel::RngStream;
use crate::{Error, Result};

/// `(1/M) sum_m g_p[m] conj(g_q[m])`.
pub fn normalized_inner_product(g_p: &[Complex64], g_q: &[Complex64]) -> Result<Complex64> {
    if g_p.len() != g_q.len() {
        return Err(Error::LengthMismatch {
            left: g_p.len(),
            right: g_q.len(),
        });
    }
    if g_p.is_empty() {
        return Err(Error::Contract("inner product of empty rows".into()));
    }
    let sum: Complex64 = g_p.iter().zip(g_q).map(|(a, b)| a * b.conj()).sum();
    Ok(sum / g_p.len() as f64)
}

/// Scenario parameters a moment estimate was computed for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSnapshot {
    pub antennas: usize,
    pub d_over_lambda: f64,
    pub subcarrier: usize,
    pub paths: usize,
    pub gain_mode: GainMode,
}

impl From<&SystemConfig> for MomentSnapshot {
    fn from(c: &SystemConfig) -> Self {
        Self {
            antennas: c.antennas,
            d_over_lambda: c.d_over_lambda,
            subcarrier: c.subcarrier,
            paths: c.paths,
            gain_mode: c.gain_mode,
        }
    }
}

/// Sample moments of a complex random variable `X`.
///
/// `variance` is `E|X|^2 - |E X|^2` computed from the sample mean and the
/// raw second moment (no Bessel correction), clamped at zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentEstimate {
    pub mean: Complex64,
    pub variance: f64,
    pub second_moment: f64,
    pub trials: usize,
    pub config: MomentSnapshot,
}

impl MomentEstimate {
    /// Moments of `samples`, accumulated left to right.
    pub fn from_samples(samples: &[Complex64], config: MomentSnapshot) -> Self {
        let n = samples.len() as f64;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut power = 0.0;
        for z in samples {
            sum += z;
            power += z.norm_sqr();
        }
        let mean = sum / n;
        let second_moment = power / n;
        let variance = (second_moment - mean.norm_sqr()).max(0.0);
        Self {
            mean,
            variance,
            second_moment,
            trials: samples.len(),
            config,
        }
    }

    /// Standard error of the sample mean, `sqrt(variance / trials)`.
    pub fn std_error(&self) -> f64 {
        (self.variance / self.trials as f64).sqrt()
    }
}

/// One realization of `g_1 g_2^H / M` for trial `trial`.
///
/// Users 1 and 2 are drawn from forks 0 and 1 of stream `(seed, trial)`, the
/// same streams [`crate::channel::build_channel_matrix`] uses for its first
/// two rows.
pub fn inner_product_trial(config: &SystemConfig, seed: u64, trial: u64) -> Result<Complex64> {
    let root = RngStream::new(seed, trial);
    let p = sample_user_params(config, &mut root.fork(0))?;
    let q = sample_user_params(config, &mut root.fork(1))?;
    normalized_inner_product(&freq_response_row(&p, config), &freq_response_row(&q, config))
}

/// Monte Carlo mean, second moment and variance of the normalized inner
/// product of two independent users over `trials` realizations.
///
/// Trials run in parallel; samples are collected in trial order and reduced
/// sequentially, so the result is bit-identical for any thread count.
pub fn mc_moments(config: &SystemConfig, trials: usize, seed: u64) -> Result<MomentEstimate> {
    if trials < 2 {
        return Err(Error::Config(format!("need at least 2 trials, got {trials}")));
    }
    config.validate()?;
    let samples = (0..trials as u64)
        .into_par_iter()
        .map(|t| inner_product_trial(config, seed, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentEstimate::from_samples(&samples, config.into()))
}
