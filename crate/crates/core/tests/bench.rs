use fmv_core::bench::{emit_table, parse_table_csv, run_replications, Screener};
use fmv_core::{BaselineKind, ExperimentId, ExperimentSpec};

#[test]
fn low_dispersion_designs() {
    let s = &run_replications(&ExperimentSpec::new(ExperimentId::E1c, 0), &[Screener::Fmv], 100, 7).unwrap()[0];
    assert_eq!(s.median, 2.0);
    assert_eq!(s.sd, 0.0);

    // X9 is 0.8-correlated with X8 and occasionally overtakes an active edge predictor
    let s = &run_replications(&ExperimentSpec::new(ExperimentId::E1a, 0), &[Screener::Fmv], 100, 7).unwrap()[0];
    assert_eq!(s.median, 8.0);
    assert!(s.sd < 1.0, "{}", s.sd);
}

#[test]
fn cartesian_rows_and_bounds() {
    let screeners = [Screener::Fmv, Screener::Baseline(BaselineKind::PearsonSis)];
    let mut all = vec![];
    for id in [ExperimentId::E1c, ExperimentId::E1d] {
        let spec = ExperimentSpec::new(id, 0).with_size(200, 300);
        let out = run_replications(&spec, &screeners, 6, 3).unwrap();
        for s in &out {
            assert_eq!(s.replications(), 6);
            assert!(s.mms.iter().all(|&m| m >= s.n_active && m <= 300));
        }
        all.extend(out);
    }
    let report = emit_table(&all);
    let rows = parse_table_csv(&report.csv).unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(report.text.lines().count(), 5);
}

#[test]
fn same_seed_same_report() {
    let spec = ExperimentSpec::new(ExperimentId::E5, 0).with_size(100, 120);
    let a = emit_table(&run_replications(&spec, &Screener::ALL, 4, 99).unwrap());
    let b = emit_table(&run_replications(&spec, &Screener::ALL, 4, 99).unwrap());
    assert_eq!(a, b);
    let c = emit_table(&run_replications(&spec, &Screener::ALL, 4, 100).unwrap());
    assert_ne!(a.csv, c.csv);
}

#[test]
fn zero_replications_rejected() {
    let spec = ExperimentSpec::new(ExperimentId::E1a, 0).with_size(50, 20);
    assert!(run_replications(&spec, &[Screener::Fmv], 0, 1).is_err());
    assert!(run_replications(&spec, &[], 1, 1).is_err());
}
