//! Closed-form outage probability and average achievable rate.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::rho;
use crate::numerics::crossings::CrossingProfile;
use crate::numerics::{CaseId, QuadratureSpec};
use crate::params::{Scenario, SystemParams};

mod full;
mod partial;

pub use full::{outage_fwl, outage_fwnl, rate_fwl, rate_fwnl};
pub use partial::{outage_pwl, outage_pwnl, rate_pwl, rate_pwnl};

/// Which performance metric to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Outage,
    Rate,
}

impl Metric {
    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Outage => "outage",
            Metric::Rate => "rate",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "outage" => Ok(Metric::Outage),
            "rate" => Ok(Metric::Rate),
            _ => Err(Error::config(
                "metric",
                format!("unknown metric `{s}` (expected outage or rate)"),
            )),
        }
    }
}

/// A closed-form metric value with the branch that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricResult {
    /// Outage probability, or rate in bits/s/Hz.
    pub value: f64,
    pub scenario: Scenario,
    pub case_id: Option<CaseId>,
    pub quadrature_nodes: Option<usize>,
    /// The dedicated case formula was replaced by the generic region integral.
    pub fallback: bool,
}

impl MetricResult {
    pub(crate) fn plain(value: f64, scenario: Scenario) -> Self {
        MetricResult {
            value,
            scenario,
            case_id: None,
            quadrature_nodes: None,
            fallback: false,
        }
    }
}

/// Outage probability for any scenario.
pub fn outage(scenario: Scenario, p: &SystemParams) -> Result<MetricResult> {
    match scenario {
        Scenario::Fwnl => Ok(outage_fwnl(p)),
        Scenario::Fwl => outage_fwl(p),
        Scenario::Pwnl => Ok(outage_pwnl(p)),
        Scenario::Pwl => outage_pwl(p),
    }
}

/// Average achievable rate for any scenario; `nodes` is the quadrature
/// order where one is used.
pub fn rate(scenario: Scenario, p: &SystemParams, nodes: usize) -> Result<MetricResult> {
    match scenario {
        Scenario::Fwnl => Ok(rate_fwnl(p)),
        Scenario::Fwl => rate_fwl(p, nodes),
        Scenario::Pwnl => rate_pwnl(p, nodes),
        Scenario::Pwl => rate_pwl(p, nodes),
    }
}

pub fn evaluate(
    metric: Metric,
    scenario: Scenario,
    p: &SystemParams,
    nodes: usize,
) -> Result<MetricResult> {
    match metric {
        Metric::Outage => outage(scenario, p),
        Metric::Rate => rate(scenario, p, nodes),
    }
}

pub(crate) fn quadrature(nodes: usize) -> Result<QuadratureSpec> {
    if nodes < 2 {
        return Err(Error::param(
            "nodes",
            format!("need at least 2 quadrature nodes, got {nodes}"),
        ));
    }
    QuadratureSpec::new(nodes)
}

/// `∫_0^x sqrt(r^2 - t^2) dt = (x rho(x) + r^2 asin(x/r)) / 2`.
pub(crate) fn strip_primitive(x: f64, r: f64) -> f64 {
    let u = (x / r).clamp(-1.0, 1.0);
    0.5 * (x * rho(x, r) + r * r * u.asin())
}

/// `∫_0^u sqrt(k - t^2) dt` for `|u| <= sqrt(k)`.
pub(crate) fn cap_primitive(u: f64, k: f64) -> f64 {
    if k <= 0.0 {
        return 0.0;
    }
    let rk = k.sqrt();
    let u = u.clamp(-rk, rk);
    0.5 * (u * (k - u * u).max(0.0).sqrt() + k * (u / rk).asin())
}

/// `∫_{x1}^{x2} sqrt(C e^{-alpha (x + l)} - h^2) dx` on the middle segment,
/// i.e. `(2/alpha) [Phi(x2) - Phi(x1)]` with `Phi = h atan(Delta/h) - Delta`.
///
/// The difference of `Phi` is formed without cancellation so the result
/// stays accurate as `alpha -> 0`.
pub(crate) fn decay_root_integral(prof: &CrossingProfile, x1: f64, x2: f64) -> f64 {
    if x2 == x1 {
        return 0.0;
    }
    if prof.alpha == 0.0 {
        return prof.k_feed().max(0.0).sqrt() * (x2 - x1);
    }
    let h = prof.h2.sqrt();
    let d1 = prof.decay(x1).max(0.0).sqrt();
    let d2 = prof.decay(x2).max(0.0).sqrt();
    if d1 + d2 == 0.0 {
        return 0.0;
    }
    // Delta2^2 - Delta1^2 = Omega(x1) (e^{-alpha (x2 - x1)} - 1)
    let omega1 = prof.c * (-prof.alpha * (x1 + prof.l)).exp();
    let mut diff = omega1 * (-prof.alpha * (x2 - x1)).exp_m1() / (d1 + d2);
    // Clamped endpoints sit on a root; keep the difference consistent with them.
    if d1 == 0.0 || d2 == 0.0 {
        diff = d2 - d1;
    }
    let dphi = h * (h * diff).atan2(h * h + d1 * d2) - diff;
    2.0 * dphi / prof.alpha
}

/// Outage from the generic region integral
/// `2/(pi r^2) ∫_{g > 0} [rho(x) - sqrt(max(f(x), 0))] dx`, valid for
/// every root arrangement.
pub(crate) fn region_outage(prof: &CrossingProfile, report: &crate::numerics::RootReport) -> f64 {
    if let Some(v) = report.degenerate_value() {
        return v;
    }
    let (r, l) = (prof.r, prof.l);
    let g_lo = report
        .g_roots
        .iter()
        .map(|q| q.x)
        .find(|&x| x <= report.g_argmax)
        .unwrap_or(-r);
    let g_hi = report
        .g_roots
        .iter()
        .map(|q| q.x)
        .find(|&x| x > report.g_argmax)
        .unwrap_or(r);
    let f_lo = report
        .f_roots
        .iter()
        .map(|q| q.x)
        .find(|&x| x < -l)
        .unwrap_or(-r);
    let f_hi = report
        .f_roots
        .iter()
        .map(|q| q.x)
        .find(|&x| x >= -l)
        .unwrap_or(r);
    let lo = g_lo.max(f_lo);
    let hi = g_hi.min(f_hi);

    let mut sqrt_f = 0.0;
    if hi > lo {
        // [-r, -l]
        let (a, b) = (lo.max(-r), hi.min(-l));
        if b > a {
            let k = prof.k_feed();
            sqrt_f += cap_primitive(b + l, k) - cap_primitive(a + l, k);
        }
        // [-l, l]
        let (a, b) = (lo.max(-l), hi.min(l));
        if b > a {
            sqrt_f += decay_root_integral(prof, a, b);
        }
        // [l, r]
        let (a, b) = (lo.max(l), hi.min(r));
        if b > a {
            let k = prof.k_far();
            sqrt_f += cap_primitive(b - l, k) - cap_primitive(a - l, k);
        }
    }
    let served = strip_primitive(g_hi, r) - strip_primitive(g_lo, r) - sqrt_f;
    (2.0 * served / (PI * r * r)).clamp(0.0, 1.0)
}

/// `½ ∫_{-rho}^{rho} ln(1 + q / (y^2 + s2)) dy`.
pub(crate) fn lateral_log_integral(rho: f64, s2: f64, q: f64) -> f64 {
    if rho <= 0.0 {
        return 0.0;
    }
    let s = s2.sqrt();
    let w = (s2 + q).sqrt();
    rho * (q / (rho * rho + s2)).ln_1p() + 2.0 * w * (rho / w).atan() - 2.0 * s * (rho / s).atan()
}

/// Sampling grid for the waveguide half-length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LengthGrid {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    /// Polish the grid optimum by golden-section search to 1e-3 m.
    pub refine: bool,
}

impl LengthGrid {
    /// `steps` points from `r / steps` to `r`.
    pub fn uniform(r: f64, steps: usize) -> Self {
        LengthGrid {
            start: r / steps as f64,
            stop: r,
            steps,
            refine: false,
        }
    }

    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.stop
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }

    fn validate(&self, r: f64) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::config("grid.steps", "need at least one grid point"));
        }
        if !(self.start > 0.0 && self.stop <= r && self.start <= self.stop) {
            return Err(Error::config(
                "grid",
                format!(
                    "length grid [{}, {}] must lie within (0, {r}]",
                    self.start, self.stop
                ),
            ));
        }
        if self.steps > 1 && (self.stop - self.start) / ((self.steps - 1) as f64) < 0.01 {
            return Err(Error::config(
                "grid.steps",
                "length step must be at least 0.01 m",
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LengthSearchResult {
    pub best_l: f64,
    pub best_value: f64,
    /// `(l, value)` over the grid, ascending in `l`.
    pub grid: Vec<(f64, f64)>,
    pub metric: Metric,
}

/// Waveguide half-length minimising outage or maximising rate for the
/// partial-coverage lossy configuration.
///
/// Ties keep the smallest length.
pub fn optimal_length_search(
    p: &SystemParams,
    metric: Metric,
    grid: &LengthGrid,
    nodes: usize,
) -> Result<LengthSearchResult> {
    grid.validate(p.r)?;
    let objective = |l: f64| -> Result<f64> {
        let q = p.with_half_length(l);
        Ok(evaluate(metric, Scenario::Pwl, &q, nodes)?.value)
    };
    let better = |cand: f64, best: f64| match metric {
        Metric::Outage => cand < best,
        Metric::Rate => cand > best,
    };
    let ls = grid.points();
    let values = ls
        .par_iter()
        .map(|&l| objective(l))
        .collect::<Result<Vec<f64>>>()?;
    let mut best_idx = 0;
    for (i, &v) in values.iter().enumerate() {
        if better(v, values[best_idx]) {
            best_idx = i;
        }
    }
    let mut best_l = ls[best_idx];
    let mut best_value = values[best_idx];

    if grid.refine && ls.len() > 1 {
        let lo = ls[best_idx.saturating_sub(1)];
        let hi = ls[(best_idx + 1).min(ls.len() - 1)];
        let sign = match metric {
            Metric::Outage => 1.0,
            Metric::Rate => -1.0,
        };
        let (l, v) = golden_section(|l| objective(l).map(|v| sign * v), lo, hi, 1e-3)?;
        if better(sign * v, best_value) {
            best_l = l;
            best_value = sign * v;
        }
    }
    Ok(LengthSearchResult {
        best_l,
        best_value,
        grid: ls.into_iter().zip(values).collect(),
        metric,
    })
}

/// Minimum of a unimodal function on `[lo, hi]`.
fn golden_section<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 <= f2 { (x1, f1) } else { (x2, f2) })
}
