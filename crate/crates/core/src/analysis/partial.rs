//! Partial coverage: the waveguide spans the centred segment `[-l, l]`.

use std::f64::consts::{LN_2, PI};

use log::warn;

use crate::error::Result;
use crate::geometry::{cdf_horizontal_distance, rho};
use crate::numerics::crossings::{classify_profile, CrossingProfile};
use crate::numerics::CaseId;
use crate::params::{Scenario, SystemParams};

use super::full::RANGE_SLACK;
use super::{
    cap_primitive, decay_root_integral, lateral_log_integral, quadrature, region_outage,
    strip_primitive, MetricResult,
};

pub fn outage_pwnl(p: &SystemParams) -> MetricResult {
    let a = p.derive().a;
    let value = if a <= 0.0 {
        1.0
    } else {
        1.0 - cdf_horizontal_distance(a.sqrt(), p.r, p.l)
    };
    MetricResult::plain(value, Scenario::Pwnl)
}

pub fn rate_pwnl(p: &SystemParams, nodes: usize) -> Result<MetricResult> {
    p.validate()?;
    let spec = quadrature(nodes)?;
    let (r, l, h2) = (p.r, p.l, p.h * p.h);
    let q = p.derive().eta_snr;
    // The middle strip is even in x, so it is integrated over the whole of [-l, l].
    let under = |x: f64| lateral_log_integral(rho(x, r), h2, q);
    let beyond = |x: f64| 2.0 * lateral_log_integral(rho(x, r), h2 + (x - l) * (x - l), q);
    let sum = spec.integrate_interval(-l, l, under) + spec.integrate_interval(l, r, beyond);
    Ok(MetricResult {
        value: 2.0 * sum / (PI * r * r * LN_2),
        scenario: Scenario::Pwnl,
        case_id: None,
        quadrature_nodes: Some(nodes),
        fallback: false,
    })
}

pub fn outage_pwl(p: &SystemParams) -> Result<MetricResult> {
    p.validate()?;
    if p.alpha == 0.0 {
        return Ok(MetricResult {
            scenario: Scenario::Pwl,
            ..outage_pwnl(p)
        });
    }
    let prof = CrossingProfile::new(p, Scenario::Pwl);
    let report = classify_profile(&prof, Scenario::Pwl);
    let (r, l) = (p.r, p.l);
    let (k0, k2) = (prof.k_feed(), prof.k_far());
    let scale = 2.0 / (PI * r * r);
    let s = |x: f64| strip_primitive(x, r);
    let m = |x1: f64, x2: f64| decay_root_integral(&prof, x1, x2);
    let t0 = |x: f64| cap_primitive(x + l, k0);
    let t2 = |x: f64| cap_primitive(x - l, k2);
    let g = |i: usize| report.g_roots[i].x;
    let f = |i: usize| report.f_roots[i].x;

    let printed = match report.case {
        CaseId::NoOutage => Some(0.0),
        CaseId::FullOutage => Some(1.0),
        CaseId::TwoCrossingsMidMid => {
            let (a, c) = (g(0), g(1));
            Some(scale * (s(c) - s(a) - m(a, c)))
        }
        CaseId::TwoCrossingsMidRight => {
            let (a, c) = (g(0), g(1));
            Some(scale * (s(c) - s(a) - t2(c) - m(a, l)))
        }
        CaseId::TwoCrossingsLeftRight => {
            let (a, c) = (g(0), g(1));
            Some(scale * (s(c) - s(a) + t0(a) - t2(c) - m(-l, l)))
        }
        CaseId::CutoffLeftMid => {
            let (a, b) = (g(0), f(0));
            Some(0.5 + scale * (t0(a) - s(a) - m(-l, b)))
        }
        CaseId::CutoffLeftRight => {
            let (a, b) = (g(0), f(0));
            Some(scale * (s(r) - s(a) + t0(a) - t2(b) - m(-l, l)))
        }
        CaseId::CutoffMidMid => {
            let (a, b) = (g(0), f(0));
            Some(scale * (s(r) - s(a) - m(a, b)))
        }
        CaseId::CutoffMidRight => {
            let (a, b) = (g(0), f(0));
            Some(scale * (s(r) - s(a) - t2(b) - m(a, l)))
        }
        CaseId::TwoCutoffsLeftMid => {
            let (a, b) = (f(0), f(1));
            Some(1.0 + scale * (t0(a) - m(-l, b)))
        }
        CaseId::TwoCutoffsLeftRight => {
            let (a, b) = (f(0), f(1));
            Some(1.0 + scale * (t0(a) - t2(b) - m(-l, l)))
        }
        _ => None,
    };
    let (value, fallback) = match printed {
        Some(v) if (-RANGE_SLACK..=1.0 + RANGE_SLACK).contains(&v) => (v.clamp(0.0, 1.0), false),
        Some(v) => {
            warn!(
                "partial-coverage {} form gave {v}; using the region integral",
                report.case
            );
            (region_outage(&prof, &report), true)
        }
        None => (region_outage(&prof, &report), true),
    };
    Ok(MetricResult {
        value,
        scenario: Scenario::Pwl,
        case_id: Some(report.case),
        quadrature_nodes: None,
        fallback,
    })
}

pub fn rate_pwl(p: &SystemParams, nodes: usize) -> Result<MetricResult> {
    p.validate()?;
    if p.alpha == 0.0 {
        return Ok(MetricResult {
            scenario: Scenario::Pwl,
            ..rate_pwnl(p, nodes)?
        });
    }
    let spec = quadrature(nodes)?;
    let (r, l, h2, alpha) = (p.r, p.l, p.h * p.h, p.alpha);
    let q = p.derive().eta_snr;
    let q_far = q * (-2.0 * alpha * l).exp();
    let under = |x: f64| lateral_log_integral(rho(x, r), h2, q * (-alpha * (x + l)).exp());
    let beyond = |x: f64| lateral_log_integral(rho(x, r), h2 + (x - l) * (x - l), q_far);
    let behind = |x: f64| lateral_log_integral(rho(x, r), h2 + (x + l) * (x + l), q);
    let sum = spec.integrate_interval(-l, l, under)
        + spec.integrate_interval(l, r, beyond)
        + spec.integrate_interval(-r, -l, behind);
    Ok(MetricResult {
        value: 2.0 * sum / (PI * r * r * LN_2),
        scenario: Scenario::Pwl,
        case_id: None,
        quadrature_nodes: Some(nodes),
        fallback: false,
    })
}
