use num_complex::Complex64;

use super::config::SystemConfig;
use super::params::sample_user_params;
use super::response::freq_response_row;
use crate::numkernel::{sample_complex_gaussian, HermitianMatrix, RngStream};
use crate::{Error, Result};

/// `K x M` downlink channel matrix for one subcarrier; row `k` is user `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
    /// Subcarrier index for sparse channels, `None` for the i.i.d. baseline.
    subcarrier: Option<usize>,
}

impl ChannelMatrix {
    pub fn from_rows(rows: Vec<Vec<Complex64>>, subcarrier: Option<usize>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                left: r.len(),
                right: cols,
            });
        }
        let n = rows.len();
        Ok(Self {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
            subcarrier,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn subcarrier(&self) -> Option<usize> {
        self.subcarrier
    }

    pub fn row(&self, k: usize) -> &[Complex64] {
        &self.entries[k * self.cols..(k + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Complex64]> {
        self.entries.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// `G G^H`.
    pub fn gram(&self) -> HermitianMatrix {
        let rows: Vec<&[Complex64]> = self.row_iter().collect();
        HermitianMatrix::gram(&rows).expect("rows of a ChannelMatrix have equal length")
    }

    /// `D^{1/2} G`: row `k` scaled by `sqrt(beta_k)`.
    pub fn scale_rows(&self, beta: &[f64]) -> Result<ChannelMatrix> {
        if beta.len() != self.rows {
            return Err(Error::LengthMismatch {
                left: beta.len(),
                right: self.rows,
            });
        }
        let mut out = self.clone();
        for (k, b) in beta.iter().enumerate() {
            let s = b.sqrt();
            for z in &mut out.entries[k * self.cols..(k + 1) * self.cols] {
                *z *= s;
            }
        }
        Ok(out)
    }
}

/// Sparse channel matrix for `config.users` users. User `k` draws its paths
/// from `rng.fork(k)`, so each row depends only on its own stream.
pub fn build_channel_matrix(config: &SystemConfig, rng: &RngStream) -> Result<ChannelMatrix> {
    config.validate()?;
    let rows = (0..config.users)
        .map(|k| {
            let params = sample_user_params(config, &mut rng.fork(k as u64))?;
            Ok(freq_response_row(&params, config))
        })
        .collect::<Result<Vec<_>>>()?;
    ChannelMatrix::from_rows(rows, Some(config.subcarrier))
}

/// Ideal `K x M` matrix with i.i.d. `CN(0, 1)` entries; row `k` uses
/// `rng.fork(k)`.
pub fn gaussian_baseline(antennas: usize, users: usize, rng: &RngStream) -> ChannelMatrix {
    let rows = (0..users)
        .map(|k| {
            let mut r = rng.fork(k as u64);
            (0..antennas).map(|_| sample_complex_gaussian(&mut r, 1.0)).collect()
        })
        .collect();
    ChannelMatrix::from_rows(rows, None).expect("rows built with equal length")
}
