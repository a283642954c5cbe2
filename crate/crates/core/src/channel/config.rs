use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;

/// How path gains are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum GainMode {
    /// `CN(0, 1/S)` draws rescaled so that `sum |alpha|^2 = 1`.
    #[serde(alias = "normalized_energy")]
    NormalizedEnergy,
    /// Independent `CN(0, 1/S)` draws.
    #[default]
    #[serde(alias = "complex_gaussian")]
    ComplexGaussian,
}

impl GainMode {
    pub fn name(self) -> &'static str {
        match self {
            GainMode::NormalizedEnergy => "NormalizedEnergy",
            GainMode::ComplexGaussian => "ComplexGaussian",
        }
    }
}

/// Physical and simulation parameters of one channel scenario.
///
/// Field names follow the JSON configuration keys (`M`, `K`, `fc_hz`, ...).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SystemConfig {
    /// Base-station antennas.
    #[serde(rename = "M")]
    pub antennas: usize,
    /// Single-antenna users.
    #[serde(rename = "K")]
    pub users: usize,
    #[serde(rename = "fc_hz")]
    pub carrier_hz: f64,
    /// System bandwidth, which is also the sampling rate of the tap grid.
    #[serde(rename = "fs_hz")]
    pub bandwidth_hz: f64,
    #[serde(rename = "N")]
    pub ofdm_size: usize,
    /// Guard interval in samples; all path delays fall on taps `0..Ng`.
    #[serde(rename = "Ng")]
    pub guard_len: usize,
    /// Resolvable paths per user.
    #[serde(rename = "S")]
    pub paths: usize,
    pub d_over_lambda: f64,
    /// Subcarrier index, `1 <= n <= N`.
    #[serde(rename = "n")]
    pub subcarrier: usize,
    pub gain_mode: GainMode,
    #[serde(rename = "c_mps")]
    pub speed_of_light: f64,
    /// Large-scale fading diagonal `beta_k`; `None` means identity.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<f64>>,
}

impl Default for SystemConfig {
    fn default() -> Self {
        Self {
            antennas: 64,
            users: 2,
            carrier_hz: 2e9,
            bandwidth_hz: 1e7,
            ofdm_size: 4096,
            guard_len: 64,
            paths: 6,
            d_over_lambda: 0.5,
            subcarrier: 1,
            gain_mode: GainMode::ComplexGaussian,
            speed_of_light: SPEED_OF_LIGHT,
            beta: None,
        }
    }
}

impl SystemConfig {
    pub fn wavelength(&self) -> f64 {
        self.speed_of_light / self.carrier_hz
    }

    /// Antenna spacing in metres.
    pub fn spacing(&self) -> f64 {
        self.d_over_lambda * self.wavelength()
    }

    /// Subcarrier frequency offset `gamma_n = n f_s / N` in Hz.
    pub fn subcarrier_offset(&self) -> f64 {
        self.subcarrier as f64 * self.bandwidth_hz / self.ofdm_size as f64
    }

    /// `lambda gamma_n / c = n f_s / (N f_c)`.
    pub fn relative_offset(&self) -> f64 {
        self.wavelength() * self.subcarrier_offset() / self.speed_of_light
    }

    /// Spatial frequency scale `a = 2 pi (d/lambda)(1 - lambda gamma_n / c)`;
    /// antenna `m` of a path at angle `theta` picks up phase `a m sin(theta)`.
    pub fn steering_scale(&self) -> f64 {
        TAU * self.d_over_lambda * (1.0 - self.relative_offset())
    }

    /// `beta_k`, defaulting to 1.
    pub fn large_scale(&self, user: usize) -> f64 {
        self.beta.as_ref().map_or(1.0, |b| b[user])
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.antennas == 0 {
            return bad("M must be positive".into());
        }
        if self.users == 0 {
            return bad("K must be positive".into());
        }
        if self.paths == 0 {
            return bad("S must be positive".into());
        }
        if self.paths > self.guard_len {
            return bad(format!("S = {} exceeds Ng = {}", self.paths, self.guard_len));
        }
        if self.ofdm_size == 0 {
            return bad("N must be positive".into());
        }
        if self.subcarrier == 0 || self.subcarrier > self.ofdm_size {
            return bad(format!(
                "subcarrier n = {} outside 1..={}",
                self.subcarrier, self.ofdm_size
            ));
        }
        for (name, v) in [
            ("fc_hz", self.carrier_hz),
            ("fs_hz", self.bandwidth_hz),
            ("d_over_lambda", self.d_over_lambda),
            ("c_mps", self.speed_of_light),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return bad(format!("{name} must be finite and positive, got {v}"));
            }
        }
        let rel = self.relative_offset();
        if !(rel < 1.0) {
            return bad(format!(
                "n f_s / (N f_c) = {rel} must be below 1 (carrier must dominate bandwidth)"
            ));
        }
        if !(self.steering_scale() > 0.0) {
            return bad("steering scale a must be positive".into());
        }
        if let Some(beta) = &self.beta {
            if beta.len() != self.users {
                return bad(format!("beta has {} entries, K = {}", beta.len(), self.users));
            }
            if beta.iter().any(|b| !(b.is_finite() && *b >= 0.0)) {
                return bad("beta entries must be finite and >= 0".into());
            }
        }
        Ok(())
    }
}
