mod common;

use std::f64::consts::PI;

use common::{adaptive_simpson, reference};
use pass_core::analysis::{rate_fwnl, rate_pwnl};
use pass_core::numerics::crossings::CrossingProfile;
use pass_core::numerics::{
    classify_crossings, dilog, find_root_bracketed, gauss_chebyshev, CaseId, QuadratureSpec,
    Segment,
};
use pass_core::Scenario;

/// `sum_{k>=1} (-1)^k / k^2` from `terms` partial sums, Euler-accelerated by
/// repeated averaging of neighbouring partial sums.
fn euler_alternating_oracle(terms: usize) -> f64 {
    let mut partial = Vec::with_capacity(terms);
    let mut s = 0.0;
    for k in 1..=terms {
        let kf = k as f64;
        s += if k % 2 == 0 { 1.0 } else { -1.0 } / (kf * kf);
        partial.push(s);
    }
    let mut level: Vec<f64> = partial[terms - 40..].to_vec();
    while level.len() > 1 {
        level = level.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    level[0]
}

/// `Li2(-s) = -∫_0^s ln(1+t)/t dt`.
fn dilog_by_quadrature(s: f64) -> f64 {
    let f = |t: f64| if t == 0.0 { 1.0 } else { t.ln_1p() / t };
    -adaptive_simpson(&f, 0.0, s, 1e-14)
}

#[test]
fn dilog_minus_one_matches_series() {
    let oracle = euler_alternating_oracle(1000);
    assert!((oracle + PI * PI / 12.0).abs() < 1e-13, "oracle {oracle}");
    let v = dilog(-1.0).unwrap();
    assert!((v - oracle).abs() < 1e-12, "{v} vs {oracle}");
    assert!((v + 0.822_467_033_4).abs() < 1e-10);
}

#[test]
fn dilog_matches_integral_definition() {
    for s in [0.05, 0.3, 0.5, 0.9, 2.0, 10.0, 37.5, 200.0] {
        let v = dilog(-s).unwrap();
        let oracle = dilog_by_quadrature(s);
        assert!(
            (v - oracle).abs() <= 1e-10,
            "Li2(-{s}) = {v}, integral {oracle}"
        );
    }
}

#[test]
fn quadrature_trivial_integrands() {
    for v in [2, 3, 16, 101] {
        let q = QuadratureSpec::new(v).unwrap();
        assert!((gauss_chebyshev(&q, |_| 1.0) - PI).abs() < 1e-13);
        assert!(gauss_chebyshev(&q, |t| t).abs() < 1e-15);
    }
    let q = QuadratureSpec::new(16).unwrap();
    assert!((q.integrate(|t| ((1.0 - t) * (1.0 + t)).sqrt()) - PI / 2.0).abs() < 1e-14);
}

#[test]
fn rate_quadrature_error_shrinks_with_nodes() {
    // Full-length partial coverage against the exact full-coverage rate.
    for db in [95.0, 105.0, 115.0] {
        let p = reference(db).with_half_length(25.0);
        let exact = rate_fwnl(&p).value;
        let mut prev = f64::INFINITY;
        for v in [4, 8, 16, 32, 64, 128] {
            let err = (rate_pwnl(&p, v).unwrap().value - exact).abs() / exact;
            if prev > 1e-10 {
                assert!(err <= 0.5 * prev, "{db} dB, V={v}: {err:e} after {prev:e}");
            }
            prev = err;
        }
        assert!(prev < 1e-10, "{db} dB: {prev:e}");
    }
}

#[test]
fn lossless_crossings_have_closed_form_roots() {
    let p = reference(105.0).with_alpha(0.0);
    let d = p.derive();
    let (r, h2) = (p.r, p.h * p.h);
    let g = |x: f64| r * r - x * x - (d.c - h2);
    let want = (r * r - d.c + h2).sqrt();
    let right = find_root_bracketed(g, 0.0, r, 0.0).unwrap();
    let left = find_root_bracketed(g, -r, 0.0, 0.0).unwrap();
    assert!((right - want).abs() < 1e-10);
    assert!((left + want).abs() < 1e-10);
}

#[test]
fn reference_setup_roots_match_dense_scan() {
    const POINTS: usize = 1_000_000;
    for scenario in [Scenario::Fwl, Scenario::Pwl] {
        let p = reference(105.0);
        let report = classify_crossings(&p, scenario).unwrap();
        assert!(!report.case.is_degenerate());
        assert_ne!(report.case, CaseId::Unclassified);
        let prof = CrossingProfile::new(&p, scenario);
        let r = p.r;
        let step = 2.0 * r / (POINTS - 1) as f64;
        for (h, roots) in [
            (&(|x| prof.g(x)) as &dyn Fn(f64) -> f64, &report.g_roots),
            (&(|x| prof.f(x)) as &dyn Fn(f64) -> f64, &report.f_roots),
        ] {
            let mut scan = Vec::new();
            let mut prev = h(-r) < 0.0;
            for i in 1..POINTS {
                let x = -r + step * i as f64;
                let neg = h(x) < 0.0;
                if neg != prev {
                    scan.push(x - 0.5 * step);
                }
                prev = neg;
            }
            assert_eq!(scan.len(), roots.len(), "{scenario}");
            for (x, root) in scan.iter().zip(roots.iter()) {
                assert!((x - root.x).abs() <= step, "{scenario}: {x} vs {}", root.x);
                assert_eq!(root.segment, Segment::of(*x, prof.l));
            }
        }
    }
}
