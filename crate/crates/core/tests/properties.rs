use proptest::prelude::*;

use pass_core::analysis::{self, rate_fwl, rate_fwnl};
use pass_core::geometry::{cdf_abs_y, cdf_horizontal_distance, DevicePosition};
use pass_core::harness::{fmt_g12, SweepConfig};
use pass_core::montecarlo::{estimate_outage, estimate_rate};
use pass_core::numerics::crossings::CrossingProfile;
use pass_core::numerics::{classify_crossings, CaseId};
use pass_core::{Scenario, SnrModel, SystemParams};

fn params() -> impl Strategy<Value = SystemParams> {
    (
        10.0..40.0f64,
        3.0..15.0f64,
        0.0..0.05f64,
        0.001..1.0f64,
        85.0..125.0f64,
    )
        .prop_map(|(r, h, alpha, frac, db)| {
            SystemParams {
                r,
                h,
                alpha,
                l: r * frac,
                ..SystemParams::reference_defaults()
            }
            .with_transmit_snr_db(db)
        })
}

fn lossy_params() -> impl Strategy<Value = SystemParams> {
    (params(), 1e-4..0.2f64).prop_map(|(p, alpha)| p.with_alpha(alpha))
}

fn scenario() -> impl Strategy<Value = Scenario> {
    prop::sample::select(Scenario::ALL.to_vec())
}

proptest! {
    #[test]
    fn outage_is_a_probability(p in params(), s in scenario()) {
        let v = analysis::outage(s, &p).unwrap().value;
        prop_assert!((0.0..=1.0).contains(&v), "{v}");
    }

    #[test]
    fn rate_is_finite_and_positive(p in params(), s in scenario()) {
        let v = analysis::rate(s, &p, 64).unwrap().value;
        prop_assert!(v.is_finite() && v > 0.0, "{v}");
    }

    #[test]
    fn loss_never_raises_the_rate(p in lossy_params()) {
        let lossy = rate_fwl(&p, 200).unwrap().value;
        let lossless = rate_fwnl(&p).value;
        prop_assert!(lossy < lossless, "{lossy} vs {lossless}");
    }

    #[test]
    fn dispatch_is_exhaustive(p in lossy_params()) {
        for s in [Scenario::Fwl, Scenario::Pwl] {
            let res = analysis::outage(s, &p).unwrap();
            let case = res.case_id.unwrap();
            prop_assert_ne!(case, CaseId::Unclassified);
            if res.fallback {
                prop_assert_eq!(case, CaseId::TwoCrossingsLeftMid);
            }
        }
    }

    #[test]
    fn roots_solve_their_equations(p in lossy_params()) {
        for s in [Scenario::Fwl, Scenario::Pwl] {
            let report = classify_crossings(&p, s).unwrap();
            let prof = CrossingProfile::new(&p, s);
            for root in &report.g_roots {
                prop_assert!(prof.g(root.x).abs() <= 1e-9, "g({}) = {}", root.x, prof.g(root.x));
            }
            for root in &report.f_roots {
                prop_assert!(prof.f(root.x).abs() <= 1e-9, "f({}) = {}", root.x, prof.f(root.x));
            }
            for pair in report.g_roots.windows(2).chain(report.f_roots.windows(2)) {
                prop_assert!(pair[0].x < pair[1].x);
            }
        }
    }

    #[test]
    fn cdfs_are_monotone(r in 1.0..50.0f64, frac in 0.0..1.0f64, u in 0.0..1.0f64, v in 0.0..1.0f64) {
        let l = (r * frac).max(1e-6 * r);
        let (a, b) = if u <= v { (u * r, v * r) } else { (v * r, u * r) };
        prop_assert!(cdf_abs_y(a, r) <= cdf_abs_y(b, r));
        prop_assert!(cdf_horizontal_distance(a, r, l) <= cdf_horizontal_distance(b, r, l));
    }

    #[test]
    fn snr_is_bounded_by_the_best_position(
        p in params(),
        s in scenario(),
        u in 0.0..1.0f64,
        phi in 0.0..std::f64::consts::TAU,
    ) {
        let rad = p.r * u.sqrt();
        let pos = DevicePosition { x: rad * phi.cos(), y: rad * phi.sin() };
        let snr = SnrModel::new(s, &p).snr(pos);
        let best = p.derive().eta_snr / (p.h * p.h);
        prop_assert!(snr > 0.0 && snr <= best * (1.0 + 1e-12));
    }

    #[test]
    fn fixed_seed_estimates_repeat(p in params(), s in scenario(), seed in any::<u64>()) {
        prop_assert_eq!(
            estimate_outage(s, &p, 2000, seed).unwrap(),
            estimate_outage(s, &p, 2000, seed).unwrap()
        );
        prop_assert_eq!(
            estimate_rate(s, &p, 2000, seed).unwrap(),
            estimate_rate(s, &p, 2000, seed).unwrap()
        );
    }

    #[test]
    fn g12_round_trips(v in prop::num::f64::NORMAL) {
        let back: f64 = fmt_g12(v).parse().unwrap();
        prop_assert!((back - v).abs() <= 1e-11 * v.abs(), "{v} -> {back}");
    }

    #[test]
    fn config_parser_never_panics(text in "\\PC{0,200}") {
        let _ = SweepConfig::from_toml_str(&text);
    }

    #[test]
    fn config_parser_survives_mangled_presets(cut in 0usize..400, junk in "[\\[\\]=\"a-z0-9_. \n]{0,40}") {
        let base = "metric = \"rate\"\nscenarios = [\"FWL\", \"PWL\"]\n[sweep]\nvariable = \"l\"\nstart = 1\nstop = 20\nsteps = 5\n[params]\nalpha = 0.02\n";
        let cut = cut.min(base.len());
        let text = format!("{}{junk}{}", &base[..cut], &base[cut..]);
        let _ = SweepConfig::from_toml_str(&text);
    }
}
