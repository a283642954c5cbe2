//! Eigenvalues of `G G^H` and downlink sum capacity.

use crate::channel::ChannelMatrix;
use crate::numkernel::{clamp_psd, hermitian_eigenvalues, log2_det_from_eigenvalues};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSummary {
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// `lambda_max / lambda_min`, or `f64::INFINITY` when `lambda_min` is 0.
    pub condition_number: f64,
}

/// Extreme eigenvalues and condition number of `G G^H`.
pub fn eigen_summary(g: &ChannelMatrix) -> Result<EigenSummary> {
    if g.rows() > g.cols() {
        return Err(Error::Config(format!(
            "eigen summary needs K <= M, got K = {}, M = {}",
            g.rows(),
            g.cols()
        )));
    }
    if g.rows() == 0 {
        return Err(Error::Config("channel matrix has no rows".into()));
    }
    let gram = g.gram();
    let mut eig = hermitian_eigenvalues(&gram)?;
    clamp_psd(&mut eig, gram.frobenius_norm());
    let lambda_min = eig[0];
    let lambda_max = eig[eig.len() - 1];
    if lambda_min < 0.0 {
        return Err(Error::Contract(format!(
            "G G^H has eigenvalue {lambda_min:e}, below the PSD tolerance"
        )));
    }
    let condition_number = if lambda_min > 0.0 {
        lambda_max / lambda_min
    } else {
        f64::INFINITY
    };
    Ok(EigenSummary {
        lambda_min,
        lambda_max,
        condition_number,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityResult {
    /// `log2 det(I + rho_d D^{1/2} G G^H D^{1/2})` in bits per channel use.
    pub capacity_bits: f64,
    pub per_user: f64,
    pub rho_d: f64,
    /// `sum_k log2(1 + rho_d M beta_k)`, the large-array approximation.
    pub asymptotic_bits: f64,
}

/// Sum capacity of `G` with transmit power `rho_d` and large-scale fading
/// `beta` (one weight per row).
pub fn capacity(g: &ChannelMatrix, rho_d: f64, beta: &[f64]) -> Result<CapacityResult> {
    if !(rho_d >= 0.0) || !rho_d.is_finite() {
        return Err(Error::Domain(format!("rho_d must be finite and >= 0, got {rho_d}")));
    }
    let scaled = g.scale_rows(beta)?;
    let gram = scaled.gram();
    let mut eig = hermitian_eigenvalues(&gram)?;
    clamp_psd(&mut eig, gram.frobenius_norm());
    let capacity_bits = log2_det_from_eigenvalues(&eig, rho_d)?;
    let m = g.cols() as f64;
    let asymptotic_bits = beta.iter().map(|b| (1.0 + rho_d * m * b).log2()).sum();
    Ok(CapacityResult {
        capacity_bits,
        per_user: capacity_bits / g.rows() as f64,
        rho_d,
        asymptotic_bits,
    })
}

/// Hadamard bound `sum_k log2(1 + rho_d beta_k ||g_k||^2)` on the capacity of
/// one realization.
pub fn hadamard_bound(g: &ChannelMatrix, rho_d: f64, beta: &[f64]) -> Result<f64> {
    if beta.len() != g.rows() {
        return Err(Error::LengthMismatch {
            left: beta.len(),
            right: g.rows(),
        });
    }
    Ok(g
        .row_iter()
        .zip(beta)
        .map(|(row, b)| {
            let energy: f64 = row.iter().map(|z| z.norm_sqr()).sum();
            (1.0 + rho_d * b * energy).log2()
        })
        .sum())
}
