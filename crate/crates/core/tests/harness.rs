use pass_core::harness::{
    figure_config, run_sweep, run_validation, SweepConfig, ValidateConfig, CSV_HEADER,
};
use pass_core::Error;

fn closed_form_only(id: u32) -> SweepConfig {
    let mut cfg = figure_config(id).unwrap();
    cfg.mc.enabled = false;
    cfg
}

#[test]
fn snr_sweep_outage_falls_with_power() {
    let outcome = run_sweep(&closed_form_only(2)).unwrap();
    assert_eq!(outcome.rows.len(), 2 * 4 * 36);
    assert_eq!(outcome.labels().len(), 8);
    for label in outcome.labels() {
        let curve = outcome.curve(&label);
        assert!(curve.windows(2).all(|w| w[1].1 <= w[0].1), "{label}");
        assert!(curve.last().unwrap().1 < curve[0].1, "{label}");
    }
}

#[test]
fn snr_sweep_matches_sampling_on_most_rows() {
    let outcome = run_sweep(&figure_config(2).unwrap()).unwrap();
    let checked = outcome.passed() + outcome.failed();
    assert_eq!(checked, outcome.rows.len());
    assert!(
        outcome.passed() as f64 >= 0.95 * checked as f64,
        "{}",
        outcome.summary()
    );
}

#[test]
fn length_sweep_rate_has_interior_maxima() {
    let outcome = run_sweep(&closed_form_only(7)).unwrap();
    for label in outcome.labels() {
        let curve = outcome.curve(&label);
        let (best, _) =
            curve.iter().enumerate().fold(
                (0, f64::MIN),
                |acc, (i, &(_, v))| {
                    if v > acc.1 {
                        (i, v)
                    } else {
                        acc
                    }
                },
            );
        assert!(best > 0 && best < curve.len() - 1, "{label}: {best}");
    }
}

#[test]
fn lossy_full_coverage_is_worse_at_high_power() {
    let outcome = run_sweep(&closed_form_only(3)).unwrap();
    for alpha in ["0.02", "0.04"] {
        let full = outcome.curve(&format!("FWL/alpha={alpha}"));
        let partial = outcome.curve(&format!("PWL/alpha={alpha}"));
        let mut strict = 0;
        for (f, p) in full.iter().zip(&partial).filter(|(f, _)| f.0 >= 110.0) {
            assert!(f.1 >= p.1, "alpha={alpha} at {} dB", f.0);
            if f.1 > 0.0 {
                assert!(f.1 > p.1);
                strict += 1;
            }
        }
        assert!(strict > 0, "alpha={alpha}");
    }
}

#[test]
fn disabled_sampling_leaves_columns_empty() {
    let csv = run_sweep(&closed_form_only(6)).unwrap().to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 9, "{line}");
        assert_eq!((cols[4], cols[5], cols[7], cols[8]), ("", "", "", ""));
    }
}

#[test]
fn csv_files_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = figure_config(4).unwrap();
    cfg.mc.samples = 5000;
    let a = dir.path().join("a.csv");
    let b = dir.path().join("nested/b.csv");
    run_sweep(&cfg).unwrap().write_csv(&a).unwrap();
    run_sweep(&cfg).unwrap().write_csv(&b).unwrap();
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn empty_scenario_list_is_rejected() {
    let text = "scenarios = []\n[sweep]\nvariable = \"l\"\nstart = 1\nstop = 2\nsteps = 2\n";
    let cfg = SweepConfig::from_toml_str(text);
    let err = cfg.and_then(|c| run_sweep(&c).map(|_| ())).unwrap_err();
    assert!(
        matches!(err, Error::Config { ref field, .. } if field == "scenarios"),
        "{err}"
    );
}

#[test]
fn default_validation_passes_the_lattice() {
    let report = run_validation(&ValidateConfig::default(), 200).unwrap();
    let lattice: Vec<_> = report
        .rows
        .iter()
        .filter(|r| r.group == "lattice")
        .collect();
    assert!(!lattice.is_empty());
    for row in lattice {
        assert!(row.pass, "{}: {} > {}", row.name, row.gap, row.bound);
    }
}

#[test]
fn zero_tolerance_reports_failures() {
    let cfg = ValidateConfig {
        draws: 1,
        samples: 5000,
        outage_tolerance: 0.0,
        rate_tolerance: 0.0,
        lattice_outage_abs: 0.0,
        limit_outage_abs: 0.0,
        lattice_rate_rel: 0.0,
        ..ValidateConfig::default()
    };
    let report = run_validation(&cfg, 200).unwrap();
    assert!(!report.all_passed());
    assert!(report.failures() > 0);
    assert!(report.render().contains("FAIL"));
}

#[test]
fn pinned_seed_repeats_the_report() {
    let cfg = ValidateConfig {
        draws: 2,
        samples: 5000,
        lattice: 3,
        ..ValidateConfig::default()
    };
    let a = run_validation(&cfg, 100).unwrap().render();
    let b = run_validation(&cfg, 100).unwrap().render();
    assert_eq!(a, b);
}
