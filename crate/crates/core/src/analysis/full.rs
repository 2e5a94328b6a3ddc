//! Full coverage: the waveguide spans the room diameter.

use std::f64::consts::{LN_2, PI};

use log::warn;

use crate::error::Result;
use crate::geometry::{cdf_abs_y, rho};
use crate::numerics::crossings::{classify_profile, CrossingProfile};
use crate::numerics::{dilog, CaseId};
use crate::params::{Scenario, SystemParams};

use super::{decay_root_integral, quadrature, region_outage, strip_primitive, MetricResult};

/// Admissible excursion of a case formula outside `[0, 1]`.
pub(crate) const RANGE_SLACK: f64 = 1e-9;

pub fn outage_fwnl(p: &SystemParams) -> MetricResult {
    MetricResult::plain(lossless_full_outage(p), Scenario::Fwnl)
}

fn lossless_full_outage(p: &SystemParams) -> f64 {
    let a = p.derive().a;
    if a <= 0.0 {
        return 1.0;
    }
    1.0 - cdf_abs_y(a.sqrt(), p.r)
}

pub fn rate_fwnl(p: &SystemParams) -> MetricResult {
    MetricResult::plain(lossless_full_rate(p), Scenario::Fwnl)
}

fn lossless_full_rate(p: &SystemParams) -> f64 {
    let d = p.derive();
    let (g, lam) = (d.gamma, d.lambda);
    let bracket = ((1.0 + g) / (1.0 + lam)).ln() + 0.5 * (1.0 - g) / (1.0 + g)
        - 0.5 * (1.0 - lam) / (1.0 + lam);
    ((d.eta_snr / (p.h * p.h)).ln_1p() + 2.0 * bracket) / LN_2
}

pub fn outage_fwl(p: &SystemParams) -> Result<MetricResult> {
    p.validate()?;
    if p.alpha == 0.0 {
        return Ok(MetricResult {
            scenario: Scenario::Fwl,
            ..outage_fwnl(p)
        });
    }
    let prof = CrossingProfile::new(p, Scenario::Fwl);
    let report = classify_profile(&prof, Scenario::Fwl);
    let r = p.r;
    let scale = 2.0 / (PI * r * r);
    let printed = match report.case {
        CaseId::NoOutage => Some(0.0),
        CaseId::FullOutage => Some(1.0),
        CaseId::FullOneCrossing => {
            let a = report.g_roots[0].x;
            let b = report.f_roots[0].x;
            Some(
                scale
                    * (strip_primitive(r, r)
                        - strip_primitive(a, r)
                        - decay_root_integral(&prof, a, b)),
            )
        }
        CaseId::FullTwoCrossings => {
            let a = report.g_roots[0].x;
            let c = report.g_roots[1].x;
            Some(
                scale
                    * (strip_primitive(c, r)
                        - strip_primitive(a, r)
                        - decay_root_integral(&prof, a, c)),
            )
        }
        _ => None,
    };
    let (value, fallback) = match printed {
        Some(v) if (-RANGE_SLACK..=1.0 + RANGE_SLACK).contains(&v) => (v.clamp(0.0, 1.0), false),
        other => {
            if let Some(v) = other {
                warn!(
                    "full-coverage {} form gave {v}; using the region integral",
                    report.case
                );
            }
            (region_outage(&prof, &report), true)
        }
    };
    Ok(MetricResult {
        value,
        scenario: Scenario::Fwl,
        case_id: Some(report.case),
        quadrature_nodes: None,
        fallback,
    })
}

pub fn rate_fwl(p: &SystemParams, nodes: usize) -> Result<MetricResult> {
    p.validate()?;
    if p.alpha == 0.0 {
        return Ok(MetricResult {
            scenario: Scenario::Fwl,
            ..rate_fwnl(p)
        });
    }
    let spec = quadrature(nodes)?;
    let (r, h2, alpha) = (p.r, p.h * p.h, p.alpha);
    let q = p.derive().eta_snr;
    // (1/alpha) [Li2(-K v2) - Li2(-K v1)] = ∫ ln(1 + K e^{-alpha (x + r)}) dx over the chord.
    let chord = |y: f64| {
        let k = q / (y * y + h2);
        let rh = rho(y, r);
        let v_near = (alpha * (rh - r)).exp();
        let v_far = (-alpha * (rh + r)).exp();
        (dilog::dilog_nonpositive(-k * v_far) - dilog::dilog_nonpositive(-k * v_near)) / alpha
    };
    let integral = spec.integrate_interval(-r, r, chord);
    Ok(MetricResult {
        value: integral / (PI * r * r * LN_2),
        scenario: Scenario::Fwl,
        case_id: None,
        quadrature_nodes: Some(nodes),
        fallback: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference(db: f64) -> SystemParams {
        SystemParams::reference_defaults().with_transmit_snr_db(db)
    }

    #[test]
    fn fwnl_outage_limits() {
        assert_eq!(outage_fwnl(&reference(60.0)).value, 1.0);
        let p = SystemParams {
            gamma_th: 1.0,
            ..reference(140.0)
        };
        assert_eq!(outage_fwnl(&p).value, 0.0);
    }

    #[test]
    fn fwnl_rate_is_finite_and_increasing() {
        let mut prev = 0.0;
        for db in (90..=125).step_by(5) {
            let v = rate_fwnl(&reference(db as f64)).value;
            assert!(v.is_finite() && v > prev);
            prev = v;
        }
    }

    #[test]
    fn lossy_zero_alpha_delegates() {
        let p = reference(105.0).with_alpha(0.0);
        assert_eq!(outage_fwl(&p).unwrap().value, outage_fwnl(&p).value);
        assert_eq!(rate_fwl(&p, 50).unwrap().value, rate_fwnl(&p).value);
    }

    #[test]
    fn case_formula_agrees_with_region_integral() {
        for db in [100.0, 104.0, 108.0, 110.0, 112.0] {
            for alpha in [0.005, 0.02, 0.05] {
                let p = reference(db).with_alpha(alpha);
                let res = outage_fwl(&p).unwrap();
                let prof = CrossingProfile::new(&p, Scenario::Fwl);
                let generic = region_outage(&prof, &classify_profile(&prof, Scenario::Fwl));
                assert!((res.value - generic).abs() < 1e-12, "{db} {alpha}");
                assert!(!res.fallback);
            }
        }
    }
}
