//! Parameter sweeps, result tables and the invariant suite.
//!
//! Every runner is deterministic given its configuration: trial `t` draws
//! from stream `(seed, t)`, trials are evaluated in parallel and reduced in
//! trial order.

mod config;
mod runners;
mod table;
mod validate;

pub use config::{hash_canonical, ExperimentConfig, ExperimentKind, Sweep};
pub use runners::{
    gaussian_capacity_samples, gaussian_eigen_samples, run, run_capacity, run_eigen_cdf, run_moments,
    sparse_capacity_samples, sparse_eigen_samples, CAPACITY_COLUMNS, EIGEN_COLUMNS, GAUSSIAN_FORK,
    MOMENT_COLUMNS, TOOL_NAME, TOOL_VERSION,
};
pub use table::{Cell, OutputFormat, ResultTable};
pub use validate::{check_result_file, run_invariant_suite, CheckOutcome};
