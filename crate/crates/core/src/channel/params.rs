use num_complex::Complex64;

use super::config::{GainMode, SystemConfig};
use crate::numkernel::{sample_complex_gaussian, sample_uniform_angle, RngStream};
use crate::{Error, Result};

/// One user's sparse path set as seen from antenna 0: complex gains, delays
/// in seconds and angles of departure in radians.
#[derive(Debug, Clone, PartialEq)]
pub struct UserChannelParams {
    gains: Vec<Complex64>,
    delays: Vec<f64>,
    aods: Vec<f64>,
}

impl UserChannelParams {
    pub fn new(gains: Vec<Complex64>, delays: Vec<f64>, aods: Vec<f64>) -> Result<Self> {
        if gains.len() != delays.len() {
            return Err(Error::LengthMismatch {
                left: gains.len(),
                right: delays.len(),
            });
        }
        if gains.len() != aods.len() {
            return Err(Error::LengthMismatch {
                left: gains.len(),
                right: aods.len(),
            });
        }
        Ok(Self { gains, delays, aods })
    }

    /// Same gains and delays, new angles.
    pub fn with_aods(&self, aods: Vec<f64>) -> Result<Self> {
        Self::new(self.gains.clone(), self.delays.clone(), aods)
    }

    pub fn paths(&self) -> usize {
        self.gains.len()
    }

    pub fn gains(&self) -> &[Complex64] {
        &self.gains
    }

    pub fn delays(&self) -> &[f64] {
        &self.delays
    }

    pub fn aods(&self) -> &[f64] {
        &self.aods
    }

    /// `sum |alpha|^2`, the energy of the time-domain impulse response.
    pub fn energy(&self) -> f64 {
        self.gains.iter().map(|g| g.norm_sqr()).sum()
    }
}

/// Draws one user's paths.
///
/// Delays sit on the sampling grid: tap 0 is always present, the other
/// `S - 1` taps are drawn without replacement from `1..Ng` and sorted, so
/// delays are in arrival order. Angles are i.i.d. uniform on `[0, 2pi)`.
/// Gains are i.i.d. `CN(0, 1/S)`, rescaled to unit energy in
/// [`GainMode::NormalizedEnergy`].
pub fn sample_user_params(config: &SystemConfig, rng: &mut RngStream) -> Result<UserChannelParams> {
    let s = config.paths;
    if s == 0 || s > config.guard_len {
        return Err(Error::Config(format!(
            "S = {s} must be in 1..=Ng = {}",
            config.guard_len
        )));
    }

    // Partial Fisher-Yates over taps 1..Ng.
    let mut pool: Vec<usize> = (1..config.guard_len).collect();
    for i in 0..(s - 1) {
        let j = i + rng.below(pool.len() - i);
        pool.swap(i, j);
    }
    let mut taps: Vec<usize> = pool[..s - 1].to_vec();
    taps.sort_unstable();
    let delays: Vec<f64> = std::iter::once(0)
        .chain(taps)
        .map(|t| t as f64 / config.bandwidth_hz)
        .collect();

    let aods: Vec<f64> = (0..s).map(|_| sample_uniform_angle(rng)).collect();

    let variance = 1.0 / s as f64;
    let mut gains: Vec<Complex64> = (0..s).map(|_| sample_complex_gaussian(rng, variance)).collect();
    if config.gain_mode == GainMode::NormalizedEnergy {
        let norm = gains.iter().map(|g| g.norm_sqr()).sum::<f64>().sqrt();
        for g in &mut gains {
            *g /= norm;
        }
    }

    UserChannelParams::new(gains, delays, aods)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn delays_on_grid_with_first_tap() {
        let cfg = SystemConfig::default();
        for t in 0..200 {
            let p = sample_user_params(&cfg, &mut RngStream::new(5, t)).unwrap();
            assert_eq!(p.paths(), 6);
            assert_eq!(p.delays()[0], 0.0);
            for w in p.delays().windows(2) {
                assert!(w[0] < w[1], "delays must be distinct and ordered");
            }
            for &d in p.delays() {
                assert!((0.0..6.4e-6).contains(&d));
                let tap = d * cfg.bandwidth_hz;
                assert!((tap - tap.round()).abs() < 1e-9);
            }
            for &a in p.aods() {
                assert!((0.0..TAU).contains(&a));
            }
        }
    }

    #[test]
    fn all_taps_when_s_equals_ng() {
        let cfg = SystemConfig {
            paths: 8,
            guard_len: 8,
            ..SystemConfig::default()
        };
        let p = sample_user_params(&cfg, &mut RngStream::new(1, 1)).unwrap();
        let taps: Vec<f64> = p.delays().iter().map(|d| (d * cfg.bandwidth_hz).round()).collect();
        assert_eq!(taps, (0..8).map(|t| t as f64).collect::<Vec<_>>());
    }

    #[test]
    fn normalized_energy() {
        let cfg = SystemConfig {
            gain_mode: GainMode::NormalizedEnergy,
            ..SystemConfig::default()
        };
        for t in 0..500 {
            let p = sample_user_params(&cfg, &mut RngStream::new(6, t)).unwrap();
            assert!((p.energy() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn complex_gaussian_energy_has_unit_mean() {
        let cfg = SystemConfig::default();
        let n = 100_000;
        let total: f64 = (0..n)
            .map(|t| sample_user_params(&cfg, &mut RngStream::new(7, t)).unwrap().energy())
            .sum();
        let mean = total / n as f64;
        assert!((mean - 1.0).abs() < 0.02, "{mean}");
    }

    #[test]
    fn too_many_paths_is_config_error() {
        let cfg = SystemConfig {
            paths: 65,
            ..SystemConfig::default()
        };
        assert!(matches!(
            sample_user_params(&cfg, &mut RngStream::new(0, 0)),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn new_checks_lengths() {
        let one = Complex64::new(1.0, 0.0);
        assert!(UserChannelParams::new(vec![one], vec![0.0, 1.0], vec![0.0]).is_err());
        assert!(UserChannelParams::new(vec![one], vec![0.0], vec![]).is_err());
    }
}
