//! Result-table layouts consumed by plotting scripts.

use sparse_mimo::experiments::{
    run, ExperimentConfig, ExperimentKind, ResultTable, CAPACITY_COLUMNS, EIGEN_COLUMNS, MOMENT_COLUMNS,
};

fn reduced(kind: ExperimentKind, trials: usize) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::defaults(kind);
    cfg.trials = trials;
    cfg
}

fn round_trip(t: &ResultTable) -> ResultTable {
    let text = t.to_csv();
    assert!(text.lines().any(|l| !l.starts_with('#')), "header present");
    ResultTable::parse_csv(&text).unwrap()
}

#[test]
fn moments_schema_and_trend() {
    let mut cfg = reduced(ExperimentKind::Moments, 1500);
    cfg.sweep.m_values = vec![8, 32, 128, 512];
    let t = round_trip(&run(&cfg).unwrap());
    assert_eq!(t.columns(), MOMENT_COLUMNS);
    assert_eq!(t.rows().len(), 4 * 3);
    let d = t.column("d_over_lambda").unwrap();
    let sim = t.column("sim_variance").unwrap();
    let exact = t.column("analytic_variance").unwrap();
    for block in 0..3 {
        let r = block * 4..block * 4 + 4;
        assert!(d[r.clone()].iter().all(|&v| v == d[r.start]));
        for i in r.start..r.end - 1 {
            assert!(exact[i + 1] < exact[i]);
            assert!(sim[i + 1] < sim[i], "simulated variance not decreasing at row {i}");
        }
    }
    assert!(t.column("analytic_abs_mean").unwrap().iter().all(|&v| v == 0.0));
    assert!(t.column("trials").unwrap().iter().all(|&v| v == 1500.0));
}

#[test]
fn eigen_cdf_schema() {
    let t = round_trip(&run(&reduced(ExperimentKind::EigenCdf, 100)).unwrap());
    assert_eq!(t.columns(), EIGEN_COLUMNS);
    // 2 array sizes x (baseline + 3 spacings) x 3 quantities x 100 points.
    assert_eq!(t.rows().len(), 2 * 4 * 3 * 100);
    let value = t.column("value").unwrap();
    let prob = t.column("probability").unwrap();
    for block in 0..(t.rows().len() / 100) {
        let r = block * 100..block * 100 + 100;
        assert!(value[r.clone()].windows(2).all(|w| w[0] <= w[1]));
        assert!(prob[r.clone()].windows(2).all(|w| w[0] < w[1]));
        assert_eq!(prob[r.end - 1], 1.0);
    }
    let channel = t.column("channel").unwrap();
    let d = t.column("d_over_lambda").unwrap();
    for (c, d) in channel.iter().zip(&d) {
        assert_eq!(*c == 1.0, d.is_nan());
    }
}

#[test]
fn capacity_schema() {
    let t = round_trip(&run(&reduced(ExperimentKind::Capacity, 5)).unwrap());
    assert_eq!(t.columns(), CAPACITY_COLUMNS);
    assert_eq!(t.rows().len(), 16);
    let g = t.column("gaussian_per_user").unwrap();
    assert!(g.iter().all(|&v| v == g[0]), "baseline must not depend on spacing");
    let a = t.column("asymptotic_per_user").unwrap();
    assert!((a[0] - (1.0f64 + 10.0 * 128.0).log2()).abs() < 1e-12);
    let d = t.column("d_over_lambda").unwrap();
    assert!(d.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn json_mirrors_csv() {
    let mut cfg = reduced(ExperimentKind::Capacity, 3);
    cfg.sweep.d_values = vec![0.5];
    let t = run(&cfg).unwrap();
    let j = ResultTable::parse_json(&t.to_json()).unwrap();
    assert_eq!(j.columns(), t.columns());
    assert_eq!(j.rows().len(), t.rows().len());
    for (a, b) in j.rows()[0].iter().zip(&t.rows()[0]) {
        assert_eq!(a.as_f64(), b.as_f64());
    }
}
