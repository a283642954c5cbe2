//! Numerical primitives shared by the channel and analysis modules.

mod bessel;
mod hermitian;
mod rng;

pub use bessel::{bessel_j0, j0, ASYMPTOTIC_LIMIT, SERIES_LIMIT};
pub use hermitian::{
    clamp_psd, hermitian_eigenvalues, logdet_identity_plus, HermitianMatrix, HERMITIAN_TOL,
    JACOBI_TOL, PSD_CLAMP_TOL,
};
pub(crate) use hermitian::log2_det_from_eigenvalues;
pub use num_complex::Complex64 as Complex;
pub use rng::{sample_complex_gaussian, sample_uniform_angle, RngStream};
