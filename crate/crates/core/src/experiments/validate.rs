use std::path::Path;
use std::time::Instant;

use super::config::{hash_canonical, ExperimentConfig};
use super::table::ResultTable;
use crate::analysis::{
    analytical_mean_given_gains, analytical_second_moment_given_gains, analytical_variance_cn,
    capacity, empirical_cdf, hadamard_bound, mc_moments, mean_upper_bound, normalized_inner_product,
    second_moment_upper_bound,
};
use crate::channel::{build_channel_matrix, gaussian_baseline, sample_user_params, GainMode, SystemConfig};
use crate::numkernel::{
    hermitian_eigenvalues, j0, sample_complex_gaussian, HermitianMatrix, RngStream, ASYMPTOTIC_LIMIT,
    SERIES_LIMIT,
};
use crate::{Complex64, Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Self {
            name: name.to_string(),
            passed,
            detail,
        }
    }

    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        format!("{status} {}: {}", self.name, self.detail)
    }
}

fn check_bessel() -> CheckOutcome {
    let mut worst: f64 = 0.0;
    for edge in [SERIES_LIMIT, ASYMPTOTIC_LIMIT] {
        let below = j0(edge - 1e-12);
        let at = j0(edge);
        worst = worst.max((below - at).abs());
    }
    let known = [(0.0, 1.0), (1.0, 0.765_197_686_557_966_6), (10.0, -0.245_935_764_451_348_3)];
    for (x, want) in known {
        worst = worst.max((j0(x) - want).abs());
    }
    CheckOutcome::new("bessel_j0", worst < 1e-10, format!("max deviation {worst:.3e}"))
}

fn check_eigen(seed: u64) -> CheckOutcome {
    let mut rng = RngStream::new(seed, 1);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let a = 2.0 * rng.next_unit() - 1.0;
        let d = 2.0 * rng.next_unit() - 1.0;
        let b = sample_complex_gaussian(&mut rng, 1.0);
        let m = HermitianMatrix::from_row_major(2, vec![a.into(), b, b.conj(), d.into()]).expect("hermitian");
        let rad = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        match hermitian_eigenvalues(&m) {
            Ok(e) => {
                worst = worst.max((e[0] - (0.5 * (a + d) - rad)).abs());
                worst = worst.max((e[1] - (0.5 * (a + d) + rad)).abs());
            }
            Err(_) => worst = f64::INFINITY,
        }
    }
    CheckOutcome::new("hermitian_2x2", worst < 1e-12, format!("max deviation {worst:.3e}"))
}

fn check_conjugate_symmetry(seed: u64) -> CheckOutcome {
    let cfg = SystemConfig {
        antennas: 16,
        ..SystemConfig::default()
    };
    let mut exact = true;
    for t in 0..50 {
        let g = build_channel_matrix(&cfg, &RngStream::new(seed, t)).expect("valid config");
        let pq = normalized_inner_product(g.row(0), g.row(1)).expect("equal rows");
        let qp = normalized_inner_product(g.row(1), g.row(0)).expect("equal rows");
        exact &= pq == qp.conj();
    }
    CheckOutcome::new("conjugate_symmetry", exact, "X(q,p) == conj(X(p,q)) on 50 realizations".into())
}

fn check_bound_chain(seed: u64) -> CheckOutcome {
    let mut violations = 0;
    let mut sets = 0;
    for (i, &(m, d)) in [(8, 0.3), (16, 0.5), (32, 1.0)].iter().enumerate() {
        let cfg = SystemConfig {
            antennas: m,
            d_over_lambda: d,
            paths: 4,
            gain_mode: GainMode::NormalizedEnergy,
            ..SystemConfig::default()
        };
        let mean_bound = mean_upper_bound(&cfg).expect("valid config");
        let second_bound = second_moment_upper_bound(&cfg).expect("valid config");
        for t in 0..100 {
            let root = RngStream::new(seed, 10_000 * i as u64 + t);
            let p = sample_user_params(&cfg, &mut root.fork(0)).expect("valid config");
            let q = sample_user_params(&cfg, &mut root.fork(1)).expect("valid config");
            let mean = analytical_mean_given_gains(&p, &q, &cfg).expect("valid config").norm();
            let second = analytical_second_moment_given_gains(&p, &q, &cfg).expect("valid config");
            let slack = 1e-12 * (1.0 + second_bound);
            if mean * mean > second + slack || second > second_bound + slack || mean > mean_bound + 1e-12 {
                violations += 1;
            }
            sets += 1;
        }
    }
    CheckOutcome::new(
        "bound_chain",
        violations == 0,
        format!("{violations} violations in {sets} parameter sets"),
    )
}

fn check_mc_variance(seed: u64, trials: usize) -> CheckOutcome {
    let cfg = SystemConfig {
        antennas: 32,
        ..SystemConfig::default()
    };
    match (mc_moments(&cfg, trials, seed), analytical_variance_cn(&cfg)) {
        (Ok(est), Ok(var)) => {
            let rel = (est.variance - var).abs() / var;
            let z = est.mean.norm() / est.std_error();
            CheckOutcome::new(
                "mc_moments",
                rel < 0.1 && z < 5.0,
                format!("variance rel err {rel:.3}, |mean| = {z:.2} SE"),
            )
        }
        (Err(e), _) | (_, Err(e)) => CheckOutcome::new("mc_moments", false, e.to_string()),
    }
}

fn check_capacity(seed: u64) -> CheckOutcome {
    let beta = [1.0; 4];
    let mut ok = true;
    for t in 0..50 {
        let g = gaussian_baseline(16, 4, &RngStream::new(seed, t));
        let (Ok(c), Ok(bound)) = (capacity(&g, 10.0, &beta), hadamard_bound(&g, 10.0, &beta)) else {
            ok = false;
            continue;
        };
        ok &= c.capacity_bits >= 0.0 && c.capacity_bits <= bound + 1e-9;
    }
    CheckOutcome::new("capacity_bounds", ok, "0 <= C <= Hadamard bound on 50 realizations".into())
}

fn check_cdf(seed: u64) -> CheckOutcome {
    let mut rng = RngStream::new(seed, 2);
    let samples: Vec<f64> = (0..500).map(|_| rng.next_unit()).collect();
    let ok = match empirical_cdf(&samples) {
        Ok(cdf) => {
            cdf.windows(2).all(|w| w[0].0 <= w[1].0 && w[0].1 < w[1].1)
                && cdf.last().map(|p| p.1) == Some(1.0)
        }
        Err(_) => false,
    };
    CheckOutcome::new("empirical_cdf", ok, "monotone, ends at 1".into())
}

fn check_determinism(seed: u64) -> CheckOutcome {
    let cfg = SystemConfig {
        antennas: 16,
        ..SystemConfig::default()
    };
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(|| mc_moments(&cfg, 500, seed))
    };
    let ok = match (run(1), run(3)) {
        (Ok(a), Ok(b)) => {
            let bits = |z: Complex64| (z.re.to_bits(), z.im.to_bits());
            bits(a.mean) == bits(b.mean) && a.second_moment.to_bits() == b.second_moment.to_bits()
        }
        _ => false,
    };
    CheckOutcome::new("determinism", ok, "1 vs 3 threads bit-identical".into())
}

/// Fast invariant checks over the numeric kernels and estimators.
pub fn run_invariant_suite(seed: u64, trials: usize) -> Vec<CheckOutcome> {
    let start = Instant::now();
    let mut out = vec![
        check_bessel(),
        check_eigen(seed),
        check_conjugate_symmetry(seed),
        check_bound_chain(seed),
        check_mc_variance(seed, trials.max(2)),
        check_capacity(seed),
        check_cdf(seed),
        check_determinism(seed),
    ];
    let secs = start.elapsed().as_secs_f64();
    out.push(CheckOutcome::new("runtime", secs < 120.0, format!("{secs:.1} s")));
    out
}

/// Re-derives `config_hash` from the configuration embedded in a result file.
pub fn check_result_file(path: &Path) -> Result<CheckOutcome> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let table = ResultTable::parse(&text)?;
    let name = format!("hash {}", path.display());
    let (Some(embedded), Some(recorded)) = (table.meta("config"), table.meta("config_hash")) else {
        return Ok(CheckOutcome::new(&name, false, "missing config or config_hash metadata".into()));
    };
    let cfg: ExperimentConfig = match serde_json::from_str(embedded) {
        Ok(cfg) => cfg,
        Err(e) => return Ok(CheckOutcome::new(&name, false, format!("embedded config unreadable: {e}"))),
    };
    let derived = cfg.hash();
    let verbatim = hash_canonical(embedded);
    let seed_ok = table.meta("seed") == Some(cfg.seed.to_string().as_str());
    let passed = derived == recorded && verbatim == recorded && seed_ok;
    let detail = if passed {
        format!("config_hash {recorded} matches")
    } else if !seed_ok {
        "seed metadata disagrees with embedded config".into()
    } else {
        format!("recorded {recorded}, derived {derived}")
    };
    Ok(CheckOutcome::new(&name, passed, detail))
}
