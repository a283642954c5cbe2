use rayon::prelude::*;

use super::config::{ExperimentConfig, ExperimentKind};
use super::table::{Cell, ResultTable};
use crate::analysis::{
    analytical_mean_cn, analytical_variance_cn, capacity, eigen_summary, empirical_cdf,
    hadamard_bound, mc_moments, EigenSummary,
};
use crate::channel::{build_channel_matrix, gaussian_baseline, GainMode, SystemConfig};
use crate::numkernel::RngStream;
use crate::{Error, Result};

pub const TOOL_NAME: &str = "sparse-mimo";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Fork tag for the i.i.d. Gaussian baseline. Sparse users use forks
/// `0..K` of the same trial stream, so the two never share draws.
pub const GAUSSIAN_FORK: u64 = u64::MAX;

pub const MOMENT_COLUMNS: [&str; 8] = [
    "d_over_lambda",
    "m",
    "sim_abs_mean",
    "sim_variance",
    "analytic_abs_mean",
    "analytic_variance",
    "trials",
    "std_error",
];

/// `channel` is 0 for the sparse model and 1 for the Gaussian baseline;
/// `quantity` is 0 for `lambda_min`, 1 for `lambda_max`, 2 for the condition
/// number. Baseline rows carry `d_over_lambda = nan`.
pub const EIGEN_COLUMNS: [&str; 7] = ["m", "k", "channel", "d_over_lambda", "quantity", "value", "probability"];

pub const CAPACITY_COLUMNS: [&str; 9] = [
    "rho_d",
    "m",
    "k",
    "d_over_lambda",
    "sparse_per_user",
    "gaussian_per_user",
    "asymptotic_per_user",
    "gap_per_user",
    "trials",
];

fn sorted(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

fn sorted_m(values: &[usize]) -> Vec<usize> {
    let mut v = values.to_vec();
    v.sort_unstable();
    v
}

/// Runs the experiment named in `cfg` and attaches provenance metadata.
pub fn run(cfg: &ExperimentConfig) -> Result<ResultTable> {
    cfg.validate()?;
    let mut table = match cfg.experiment {
        ExperimentKind::Moments => run_moments(cfg)?,
        ExperimentKind::EigenCdf => run_eigen_cdf(cfg)?,
        ExperimentKind::Capacity => run_capacity(cfg)?,
    };
    table.set_meta("tool", TOOL_NAME);
    table.set_meta("tool_version", TOOL_VERSION);
    table.set_meta("experiment", cfg.experiment.name());
    table.set_meta("seed", cfg.seed.to_string());
    table.set_meta("trials", cfg.trials.to_string());
    table.set_meta("config_hash", cfg.hash());
    table.set_meta("config", cfg.canonical_json());
    Ok(table)
}

/// Simulated and analytical moments of `g_1 g_2^H / M` on the `(d, M)` grid,
/// rows sorted by `d` then `M`. Requires complex Gaussian gains.
pub fn run_moments(cfg: &ExperimentConfig) -> Result<ResultTable> {
    if cfg.system.gain_mode != GainMode::ComplexGaussian {
        return Err(Error::Mode {
            required: GainMode::ComplexGaussian.name(),
            actual: cfg.system.gain_mode.name(),
        });
    }
    let mut table = ResultTable::new(&MOMENT_COLUMNS);
    for d in sorted(&cfg.sweep.d_values) {
        for m in sorted_m(&cfg.sweep.m_values) {
            let point = cfg.point(m, d);
            let est = mc_moments(&point, cfg.trials, cfg.seed)?;
            let mean = analytical_mean_cn(&point)?;
            let variance = analytical_variance_cn(&point)?;
            table.push_row(vec![
                Cell::Real(d),
                Cell::from(m),
                Cell::Real(est.mean.norm()),
                Cell::Real(est.variance),
                Cell::Real(mean.norm()),
                Cell::Real(variance),
                Cell::from(cfg.trials),
                Cell::Real(est.std_error()),
            ])?;
        }
    }
    Ok(table)
}

/// Eigenvalue summaries of `trials` independent realizations of `point`.
/// Trial `t` uses stream `(seed, t)`.
pub fn sparse_eigen_samples(point: &SystemConfig, trials: usize, seed: u64) -> Result<Vec<EigenSummary>> {
    (0..trials as u64)
        .into_par_iter()
        .map(|t| eigen_summary(&build_channel_matrix(point, &RngStream::new(seed, t))?))
        .collect()
}

/// Eigenvalue summaries of `trials` Gaussian baseline realizations.
pub fn gaussian_eigen_samples(antennas: usize, users: usize, trials: usize, seed: u64) -> Result<Vec<EigenSummary>> {
    (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let rng = RngStream::new(seed, t).fork(GAUSSIAN_FORK);
            eigen_summary(&gaussian_baseline(antennas, users, &rng))
        })
        .collect()
}

fn push_cdf_rows(
    table: &mut ResultTable,
    m: usize,
    k: usize,
    channel: i64,
    d: f64,
    samples: &[EigenSummary],
) -> Result<()> {
    let quantities: [fn(&EigenSummary) -> f64; 3] =
        [|s| s.lambda_min, |s| s.lambda_max, |s| s.condition_number];
    for (q, get) in quantities.iter().enumerate() {
        let values: Vec<f64> = samples.iter().map(get).collect();
        for (value, probability) in empirical_cdf(&values)? {
            table.push_row(vec![
                Cell::from(m),
                Cell::from(k),
                Cell::Int(channel),
                Cell::Real(d),
                Cell::Int(q as i64),
                Cell::Real(value),
                Cell::Real(probability),
            ])?;
        }
    }
    Ok(())
}

/// Empirical CDFs of `lambda_min`, `lambda_max` and the condition number of
/// `G G^H` for each `M`: the Gaussian baseline first, then the sparse model
/// for each `d` in ascending order.
pub fn run_eigen_cdf(cfg: &ExperimentConfig) -> Result<ResultTable> {
    let k = cfg.system.users;
    let mut table = ResultTable::new(&EIGEN_COLUMNS);
    for m in sorted_m(&cfg.sweep.m_values) {
        if k > m {
            return Err(Error::Config(format!("K = {k} exceeds M = {m}")));
        }
        let gaussian = gaussian_eigen_samples(m, k, cfg.trials, cfg.seed)?;
        push_cdf_rows(&mut table, m, k, 1, f64::NAN, &gaussian)?;
        for d in sorted(&cfg.sweep.d_values) {
            let sparse = sparse_eigen_samples(&cfg.point(m, d), cfg.trials, cfg.seed)?;
            push_cdf_rows(&mut table, m, k, 0, d, &sparse)?;
        }
    }
    Ok(table)
}

fn beta_for(system: &SystemConfig) -> Vec<f64> {
    (0..system.users).map(|k| system.large_scale(k)).collect()
}

/// Per-realization sum capacity (bits) of the sparse model at `point`,
/// checked against the Hadamard bound.
pub fn sparse_capacity_samples(point: &SystemConfig, rho_d: f64, trials: usize, seed: u64) -> Result<Vec<f64>> {
    let beta = beta_for(point);
    (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let g = build_channel_matrix(point, &RngStream::new(seed, t))?;
            checked_capacity(&g, rho_d, &beta)
        })
        .collect()
}

/// Per-realization sum capacity (bits) of the Gaussian baseline.
pub fn gaussian_capacity_samples(
    antennas: usize,
    beta: &[f64],
    rho_d: f64,
    trials: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let rng = RngStream::new(seed, t).fork(GAUSSIAN_FORK);
            checked_capacity(&gaussian_baseline(antennas, beta.len(), &rng), rho_d, beta)
        })
        .collect()
}

fn checked_capacity(g: &crate::channel::ChannelMatrix, rho_d: f64, beta: &[f64]) -> Result<f64> {
    let c = capacity(g, rho_d, beta)?.capacity_bits;
    let bound = hadamard_bound(g, rho_d, beta)?;
    if !c.is_finite() || c < -1e-12 || c > bound * (1.0 + 1e-9) + 1e-12 {
        return Err(Error::Contract(format!(
            "capacity {c} bits outside [0, {bound}] (Hadamard bound)"
        )));
    }
    Ok(c)
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Mean per-user capacity of the sparse model across `d`, against the
/// Gaussian baseline and `log2(1 + rho_d M beta_k)`. The same trial streams
/// are reused for every `d`, and the baseline is computed once per
/// `(rho_d, M)`.
pub fn run_capacity(cfg: &ExperimentConfig) -> Result<ResultTable> {
    let k = cfg.system.users;
    let beta = beta_for(&cfg.system);
    let mut table = ResultTable::new(&CAPACITY_COLUMNS);
    for rho in sorted(&cfg.sweep.rho_values) {
        for m in sorted_m(&cfg.sweep.m_values) {
            let gaussian = mean(&gaussian_capacity_samples(m, &beta, rho, cfg.trials, cfg.seed)?) / k as f64;
            let asymptotic = beta.iter().map(|b| (1.0 + rho * m as f64 * b).log2()).sum::<f64>() / k as f64;
            for d in sorted(&cfg.sweep.d_values) {
                let sparse = mean(&sparse_capacity_samples(&cfg.point(m, d), rho, cfg.trials, cfg.seed)?) / k as f64;
                table.push_row(vec![
                    Cell::Real(rho),
                    Cell::from(m),
                    Cell::from(k),
                    Cell::Real(d),
                    Cell::Real(sparse),
                    Cell::Real(gaussian),
                    Cell::Real(asymptotic),
                    Cell::Real(gaussian - sparse),
                    Cell::from(cfg.trials),
                ])?;
            }
        }
    }
    Ok(table)
}
