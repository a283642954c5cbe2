//! Closed-form moments of `X = g_p g_q^H / M` for the sparse channel.
//!
//! With uniform angles, `E[exp(j x sin(theta))] = J0(x)`, so averaging over
//! angles turns every antenna sum into a sum of Bessel products. All sums
//! below depend on antenna indices only through `J0(a m)` and
//! `J0(a (m - m'))`, which are read from one table `J0(a delta)`,
//! `delta = 0..M`.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::channel::{GainMode, SystemConfig, UserChannelParams};
use crate::numkernel::j0;
use crate::{Error, Result};

/// Spatial frequency scale `a = 2 pi (d/lambda)(1 - n f_s / (N f_c))`.
pub fn a_param(config: &SystemConfig) -> Result<f64> {
    let a = config.steering_scale();
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Config(format!("steering scale a = {a} must be positive")));
    }
    Ok(a)
}

/// `J0(a delta)` for `delta = 0..M`, plus the three antenna double sums the
/// moment formulas need.
#[derive(Debug, Clone)]
pub struct BesselSums {
    antennas: usize,
    table: Vec<f64>,
}

impl BesselSums {
    pub fn new(a: f64, antennas: usize) -> Self {
        let table = (0..antennas).map(|d| j0(a * d as f64)).collect();
        Self { antennas, table }
    }

    pub fn for_config(config: &SystemConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self::new(a_param(config)?, config.antennas))
    }

    /// `sum_m J0(a m)^2`.
    pub fn square_sum(&self) -> f64 {
        self.table.iter().map(|v| v * v).sum()
    }

    /// `sum_m sum_m' J0(a (m - m'))^2`, grouped by lag: lag 0 occurs `M`
    /// times and lag `delta > 0` occurs `2 (M - delta)` times.
    pub fn toeplitz_square_sum(&self) -> f64 {
        let m = self.antennas;
        let mut total = m as f64 * self.table[0] * self.table[0];
        for delta in 1..m {
            let v = self.table[delta];
            total += 2.0 * (m - delta) as f64 * v * v;
        }
        total
    }

    /// `sum_m sum_m' J0(a (m - m')) J0(a m) J0(a m')`.
    pub fn cross_sum(&self) -> f64 {
        let m = self.antennas;
        let t = &self.table;
        let mut total = 0.0;
        for i in 0..m {
            let mut row = 0.0;
            for k in 0..m {
                row += t[i.abs_diff(k)] * t[k];
            }
            total += t[i] * row;
        }
        total
    }
}

fn z_terms(params: &UserChannelParams, config: &SystemConfig) -> Vec<Complex64> {
    let gamma = config.subcarrier_offset();
    params
        .gains()
        .iter()
        .zip(params.delays())
        .map(|(&alpha, &tau)| alpha * Complex64::cis(-TAU * gamma * tau))
        .collect()
}

/// `upsilon = sum_{s_p} sum_{s_q} z_p^{s_p} conj(z_q^{s_q})` with
/// `z = alpha exp(-j 2pi gamma_n tau)`.
pub fn upsilon(p: &UserChannelParams, q: &UserChannelParams, config: &SystemConfig) -> Complex64 {
    let zp = z_terms(p, config);
    let zq = z_terms(q, config);
    let mut total = Complex64::new(0.0, 0.0);
    for a in &zp {
        for b in &zq {
            total += a * b.conj();
        }
    }
    total
}

/// Cauchy–Schwarz bound `sqrt(S_p S_q)` on `|upsilon|` for unit-energy gains.
pub fn upsilon_bound(s_p: usize, s_q: usize) -> f64 {
    ((s_p * s_q) as f64).sqrt()
}

/// `E_theta[X] = upsilon (1/M) sum_m J0(a m)^2` with gains and delays held
/// fixed and angles averaged out.
pub fn analytical_mean_given_gains(
    p: &UserChannelParams,
    q: &UserChannelParams,
    config: &SystemConfig,
) -> Result<Complex64> {
    let sums = BesselSums::for_config(config)?;
    Ok(upsilon(p, q, config) * (sums.square_sum() / config.antennas as f64))
}

/// `sqrt(S_p S_q) (1/M) sum_m J0(a m)^2`, which bounds `|E_theta[X]|` for
/// unit-energy gains, with `S_p = S_q = S`.
pub fn mean_upper_bound(config: &SystemConfig) -> Result<f64> {
    let sums = BesselSums::for_config(config)?;
    Ok(upsilon_bound(config.paths, config.paths) * sums.square_sum() / config.antennas as f64)
}

/// Path-sum coefficients of the four groups in `E_theta[|X|^2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondMomentCoefficients {
    /// Same path on both sides for both users; weight `J0(a(m-m'))^2`.
    pub same_paths: f64,
    /// Same `p` path, distinct `q` paths; weight `J0(a(m-m')) J0(am) J0(am')`.
    pub distinct_q: f64,
    /// Same `q` path, distinct `p` paths; same weight as `distinct_q`.
    pub distinct_p: f64,
    /// Distinct paths for both users; weight `J0(am)^2 J0(am')^2`.
    pub distinct_both: f64,
}

impl SecondMomentCoefficients {
    /// Each group evaluated as a literal sum over path indices.
    pub fn new(p: &UserChannelParams, q: &UserChannelParams, config: &SystemConfig) -> Self {
        let zp = z_terms(p, config);
        let zq = z_terms(q, config);

        let mut same = 0.0;
        for a in &zp {
            for b in &zq {
                same += a.norm_sqr() * b.norm_sqr();
            }
        }

        let mut distinct_q = Complex64::new(0.0, 0.0);
        for a in &zp {
            for (i, b) in zq.iter().enumerate() {
                for (k, b2) in zq.iter().enumerate() {
                    if i != k {
                        distinct_q += a.norm_sqr() * b.conj() * b2;
                    }
                }
            }
        }

        let mut distinct_p = Complex64::new(0.0, 0.0);
        for b in &zq {
            for (i, a) in zp.iter().enumerate() {
                for (k, a2) in zp.iter().enumerate() {
                    if i != k {
                        distinct_p += b.norm_sqr() * a2.conj() * a;
                    }
                }
            }
        }

        let mut distinct_both = Complex64::new(0.0, 0.0);
        for (i, a) in zp.iter().enumerate() {
            for (k, a2) in zp.iter().enumerate() {
                if i == k {
                    continue;
                }
                for (l, b) in zq.iter().enumerate() {
                    for (r, b2) in zq.iter().enumerate() {
                        if l != r {
                            distinct_both += a2.conj() * a * b.conj() * b2;
                        }
                    }
                }
            }
        }

        // The distinct-path sums pair each (i, k) with (k, i), so they are
        // real up to rounding.
        Self {
            same_paths: same,
            distinct_q: distinct_q.re,
            distinct_p: distinct_p.re,
            distinct_both: distinct_both.re,
        }
    }
}

/// `E_theta[|X|^2]` with gains and delays held fixed:
/// `(1/M^2) sum_m sum_m' [c1 J0(a(m-m'))^2 + (c2 + c3) J0(a(m-m')) J0(am) J0(am')
/// + c4 J0(am)^2 J0(am')^2]`.
pub fn analytical_second_moment_given_gains(
    p: &UserChannelParams,
    q: &UserChannelParams,
    config: &SystemConfig,
) -> Result<f64> {
    let sums = BesselSums::for_config(config)?;
    let c = SecondMomentCoefficients::new(p, q, config);
    let m2 = (config.antennas * config.antennas) as f64;
    let sq = sums.square_sum();
    let value = (c.same_paths * sums.toeplitz_square_sum()
        + (c.distinct_q + c.distinct_p) * sums.cross_sum()
        + c.distinct_both * sq * sq)
        / m2;
    Ok(value.max(0.0))
}

/// Upper bound on `E[|X|^2]` for unit-energy gains with `S_p = S_q = S`:
/// `(1/M^2) sum sum [J0(a(m-m'))^2 + (2S-2) J0(a(m-m')) J0(am) J0(am')
/// + (S-1)^2 J0(am)^2 J0(am')^2]`.
pub fn second_moment_upper_bound(config: &SystemConfig) -> Result<f64> {
    let sums = BesselSums::for_config(config)?;
    let s = config.paths as f64;
    let m2 = (config.antennas * config.antennas) as f64;
    let sq = sums.square_sum();
    Ok((sums.toeplitz_square_sum()
        + (2.0 * s - 2.0) * sums.cross_sum()
        + (s - 1.0) * (s - 1.0) * sq * sq)
        / m2)
}

fn require_complex_gaussian(config: &SystemConfig) -> Result<()> {
    if config.gain_mode != GainMode::ComplexGaussian {
        return Err(Error::Mode {
            required: GainMode::ComplexGaussian.name(),
            actual: config.gain_mode.name(),
        });
    }
    Ok(())
}

/// `E[X]` for i.i.d. `CN(0, 1/S)` gains, which is exactly zero.
pub fn analytical_mean_cn(config: &SystemConfig) -> Result<Complex64> {
    require_complex_gaussian(config)?;
    Ok(Complex64::new(0.0, 0.0))
}

/// `var[X] = (1/M^2) sum_m sum_m' J0(a (m - m'))^2` for i.i.d. `CN(0, 1/S)`
/// gains.
pub fn analytical_variance_cn(config: &SystemConfig) -> Result<f64> {
    require_complex_gaussian(config)?;
    let sums = BesselSums::for_config(config)?;
    let m = config.antennas as f64;
    Ok(sums.toeplitz_square_sum() / (m * m))
}
