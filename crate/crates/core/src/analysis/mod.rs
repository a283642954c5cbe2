//! Moments of the normalized inner product, bounds, eigenvalue statistics
//! and capacity.

mod cdf;
mod inner;
mod moments;
mod spectrum;

pub use cdf::{empirical_cdf, median};
pub use inner::{
    inner_product_trial, mc_moments, normalized_inner_product, MomentEstimate, MomentSnapshot,
};
pub use moments::{
    a_param, analytical_mean_cn, analytical_mean_given_gains, analytical_second_moment_given_gains,
    analytical_variance_cn, mean_upper_bound, second_moment_upper_bound, upsilon, upsilon_bound,
    BesselSums, SecondMomentCoefficients,
};
pub use spectrum::{capacity, eigen_summary, hadamard_bound, CapacityResult, EigenSummary};
