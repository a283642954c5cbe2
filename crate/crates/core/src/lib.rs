//! Sparse massive-MIMO channels with spatial common sparsity.
//!
//! The crate generates frequency-domain channel matrices for a uniform
//! linear array whose per-user impulse responses share a small set of path
//! delays and angles of departure across all antennas, and compares Monte
//! Carlo statistics of the normalized inner product `g_p g_q^H / M` with
//! closed-form Bessel-sum expressions.
//!
//! Layout:
//! - [`numkernel`]: complex helpers, `J0`, a Jacobi Hermitian eigensolver,
//!   log-determinants and seeded sampling.
//! - [`channel`]: system configuration, sparse path sampling, steering-vector
//!   frequency responses and the i.i.d. Gaussian baseline.
//! - [`analysis`]: inner-product moments (simulated and analytical), bounds,
//!   eigenvalue summaries and capacity.
//! - [`experiments`]: sweep runners, result tables and the invariant suite
//!   behind the `sparse-mimo` binary.

pub mod analysis;
pub mod channel;
pub mod cli;
mod error;
pub mod experiments;
pub mod numkernel;

pub use error::{Error, Result};
pub use num_complex::Complex64;
