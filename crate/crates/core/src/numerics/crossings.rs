//! Root structure of the outage boundary for the lossy scenarios.
//!
//! With `f(x)` the largest squared lateral offset `y^2` at which a device at
//! abscissa `x` still meets the threshold, a device is in outage iff
//! `y^2 >= f(x)`. The chord at `x` is partly served iff
//! `g(x) = r^2 - x^2 - f(x) > 0`. On `[-r, r]`:
//!
//! * `f` increases on `[-r, -l]` and decreases on `[-l, r]`, so it has at
//!   most one root on each side of `-l`;
//! * `g` increases up to a single maximiser `x*` (on `[-l, l]`, where `g'` is
//!   strictly decreasing) and decreases afterwards, so it has at most one
//!   root on each side of `x*`.
//!
//! The full-coverage lossy scenario is the special case `l = r`.

use std::fmt;

use crate::error::{Error, Result};
use crate::params::{Scenario, SystemParams};

use super::roots::find_root_bracketed;

/// Waveguide segment that a root falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Segment {
    /// `[-r, -l)`: beyond the feed end.
    Left,
    /// `[-l, l]`: under the waveguide.
    Middle,
    /// `(l, r]`: beyond the far end.
    Right,
}

impl Segment {
    pub fn of(x: f64, l: f64) -> Segment {
        if x < -l {
            Segment::Left
        } else if x <= l {
            Segment::Middle
        } else {
            Segment::Right
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabeledRoot {
    pub x: f64,
    pub segment: Segment,
}

/// Closed-form case selected for the lossy outage probability.
///
/// `g`-crossings are named `a < c`; the cut-off root of `f` is `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseId {
    /// `g <= 0` on the whole room: nobody is in outage.
    NoOutage,
    /// `f(-l) <= 0`: even the best-served device is in outage.
    FullOutage,
    /// Full coverage, one crossing `a`; everything past the cut-off `b` is lost.
    FullOneCrossing,
    /// Full coverage, two crossings `a < c`.
    FullTwoCrossings,
    /// Partial coverage, `a, c ∈ [-l, l]`.
    TwoCrossingsMidMid,
    /// Partial coverage, `a ∈ [-l, l]`, `c ∈ [l, r]`.
    TwoCrossingsMidRight,
    /// Partial coverage, `a ∈ [-r, -l]`, `c ∈ [l, r]`.
    TwoCrossingsLeftRight,
    /// Partial coverage, `a ∈ [-r, -l]`, `c ∈ [-l, l]`. No dedicated closed
    /// form; evaluated by the generic region integral.
    TwoCrossingsLeftMid,
    /// One crossing `a ∈ [-r, -l]`, cut-off `b ∈ [-l, l]`.
    CutoffLeftMid,
    /// One crossing `a ∈ [-r, -l]`, cut-off `b ∈ [l, r]`.
    CutoffLeftRight,
    /// One crossing `a ∈ [-l, l]`, cut-off `b ∈ [-l, l]`.
    CutoffMidMid,
    /// One crossing `a ∈ [-l, l]`, cut-off `b ∈ [l, r]`.
    CutoffMidRight,
    /// `f` roots `a ∈ [-r, -l]` and `b ∈ [-l, l]`.
    TwoCutoffsLeftMid,
    /// `f` roots `a ∈ [-r, -l]` and `b ∈ [l, r]`.
    TwoCutoffsLeftRight,
    /// Root arrangement outside the list above.
    Unclassified,
}

impl CaseId {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseId::NoOutage => "no-outage",
            CaseId::FullOutage => "full-outage",
            CaseId::FullOneCrossing => "fwl-one-crossing",
            CaseId::FullTwoCrossings => "fwl-two-crossings",
            CaseId::TwoCrossingsMidMid => "pwl-g2-mid-mid",
            CaseId::TwoCrossingsMidRight => "pwl-g2-mid-right",
            CaseId::TwoCrossingsLeftRight => "pwl-g2-left-right",
            CaseId::TwoCrossingsLeftMid => "pwl-g2-left-mid",
            CaseId::CutoffLeftMid => "pwl-g1f1-left-mid",
            CaseId::CutoffLeftRight => "pwl-g1f1-left-right",
            CaseId::CutoffMidMid => "pwl-g1f1-mid-mid",
            CaseId::CutoffMidRight => "pwl-g1f1-mid-right",
            CaseId::TwoCutoffsLeftMid => "pwl-f2-left-mid",
            CaseId::TwoCutoffsLeftRight => "pwl-f2-left-right",
            CaseId::Unclassified => "pwl-generic",
        }
    }

    pub fn is_degenerate(self) -> bool {
        matches!(self, CaseId::NoOutage | CaseId::FullOutage)
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The outage boundary `f` and the served-chord margin `g` for one
/// configuration, with the waveguide on `[-l, l]` fed at `-l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingProfile {
    pub r: f64,
    pub l: f64,
    pub h2: f64,
    /// `eta P_t / (sigma2 gamma_th)`.
    pub c: f64,
    pub alpha: f64,
}

impl CrossingProfile {
    pub fn new(p: &SystemParams, scenario: Scenario) -> Self {
        CrossingProfile {
            r: p.r,
            l: scenario.half_length(p),
            h2: p.h * p.h,
            c: p.derive().c,
            alpha: scenario.attenuation(p),
        }
    }

    /// `f(-l) = C - h^2`.
    pub fn k_feed(&self) -> f64 {
        self.c - self.h2
    }

    /// `f(l) = C e^{-2 alpha l} - h^2`.
    pub fn k_far(&self) -> f64 {
        self.c * (-2.0 * self.alpha * self.l).exp() - self.h2
    }

    /// `Omega(x) - h^2` with `Omega(x) = C e^{-alpha (x + l)}`.
    pub fn decay(&self, x: f64) -> f64 {
        self.c * (-self.alpha * (x + self.l)).exp() - self.h2
    }

    pub fn f(&self, x: f64) -> f64 {
        let l = self.l;
        if x < -l {
            self.k_feed() - (x + l) * (x + l)
        } else if x <= l {
            self.decay(x)
        } else {
            self.k_far() - (x - l) * (x - l)
        }
    }

    pub fn g(&self, x: f64) -> f64 {
        (self.r - x) * (self.r + x) - self.f(x)
    }

    /// `g'` on the open middle segment.
    fn g_slope_middle(&self, x: f64) -> f64 {
        -2.0 * x + self.alpha * self.c * (-self.alpha * (x + self.l)).exp()
    }

    /// Location of the maximum of `g` on `[-r, r]`.
    pub fn g_argmax(&self) -> f64 {
        let l = self.l;
        // g' > 0 on [-r, -l) and right of -l; it only changes sign inside
        // (-l, l) or, failing that, at the jump down at x = l.
        if self.g_slope_middle(l) >= 0.0 {
            return l;
        }
        find_root_bracketed(|x| self.g_slope_middle(x), -l, l, 0.0)
            .expect("g' changes sign on the middle segment")
    }
}

/// Crossing and cut-off roots with the closed-form case they select.
#[derive(Debug, Clone, PartialEq)]
pub struct RootReport {
    pub scenario: Scenario,
    /// Half-length the roots were labelled against.
    pub l: f64,
    /// Roots of `g` in `[-r, r]`, ascending.
    pub g_roots: Vec<LabeledRoot>,
    /// Roots of `f` in `[-r, r]`, ascending.
    pub f_roots: Vec<LabeledRoot>,
    pub g_argmax: f64,
    pub g_max: f64,
    pub case: CaseId,
    /// Outage is identically 0 or 1.
    pub degenerate: bool,
}

impl RootReport {
    /// Outage value fixed by a degenerate case.
    pub fn degenerate_value(&self) -> Option<f64> {
        match self.case {
            CaseId::NoOutage => Some(0.0),
            CaseId::FullOutage => Some(1.0),
            _ => None,
        }
    }
}

/// Locates the roots of `g` and `f` and selects the outage closed form.
///
/// Only defined for the lossy scenarios with `alpha > 0`.
pub fn classify_crossings(p: &SystemParams, scenario: Scenario) -> Result<RootReport> {
    if !scenario.is_lossy() {
        return Err(Error::param(
            "scenario",
            format!("crossing classification applies to FWL and PWL, not {scenario}"),
        ));
    }
    if p.alpha.is_nan() || p.alpha <= 0.0 {
        return Err(Error::param(
            "alpha",
            "crossing classification needs alpha > 0",
        ));
    }
    let prof = CrossingProfile::new(p, scenario);
    Ok(classify_profile(&prof, scenario))
}

pub(crate) fn classify_profile(prof: &CrossingProfile, scenario: Scenario) -> RootReport {
    let (r, l) = (prof.r, prof.l);
    let mut report = RootReport {
        scenario,
        l,
        g_roots: Vec::new(),
        f_roots: Vec::new(),
        g_argmax: -l,
        g_max: prof.g(-l),
        case: CaseId::FullOutage,
        degenerate: true,
    };
    if prof.k_feed() <= 0.0 {
        return report;
    }

    let x_star = prof.g_argmax();
    let g_max = prof.g(x_star);
    report.g_argmax = x_star;
    report.g_max = g_max;
    if g_max <= 0.0 {
        report.case = CaseId::NoOutage;
        return report;
    }
    report.degenerate = false;

    let solve = |f: &dyn Fn(f64) -> f64, lo: f64, hi: f64| {
        find_root_bracketed(f, lo, hi, 0.0).expect("sign change checked before solving")
    };
    let label = |x: f64| LabeledRoot {
        x,
        segment: Segment::of(x, l),
    };
    let g = |x: f64| prof.g(x);
    let f = |x: f64| prof.f(x);

    let g_left = (g(-r) < 0.0).then(|| label(solve(&g, -r, x_star)));
    let g_right = (g(r) < 0.0).then(|| label(solve(&g, x_star, r)));
    let f_left = (l < r && f(-r) < 0.0).then(|| label(solve(&f, -r, -l)));
    let f_right = (f(r) < 0.0).then(|| label(solve(&f, -l, r)));

    report.g_roots.extend(g_left.into_iter().chain(g_right));
    report.f_roots.extend(f_left.into_iter().chain(f_right));

    use Segment::*;
    let full = scenario == Scenario::Fwl;
    report.case = match (g_left, g_right, f_left, f_right) {
        (Some(_), Some(_), _, _) if full => CaseId::FullTwoCrossings,
        (Some(a), Some(c), _, _) => match (a.segment, c.segment) {
            (Middle, Middle) => CaseId::TwoCrossingsMidMid,
            (Middle, Right) => CaseId::TwoCrossingsMidRight,
            (Left, Right) => CaseId::TwoCrossingsLeftRight,
            (Left, Middle) => CaseId::TwoCrossingsLeftMid,
            _ => CaseId::Unclassified,
        },
        (Some(_), None, None, Some(_)) if full => CaseId::FullOneCrossing,
        (Some(a), None, None, Some(b)) => match (a.segment, b.segment) {
            (Left, Middle) => CaseId::CutoffLeftMid,
            (Left, Right) => CaseId::CutoffLeftRight,
            (Middle, Middle) => CaseId::CutoffMidMid,
            (Middle, Right) => CaseId::CutoffMidRight,
            _ => CaseId::Unclassified,
        },
        (None, None, Some(a), Some(b)) => match (a.segment, b.segment) {
            (Left, Middle) => CaseId::TwoCutoffsLeftMid,
            (Left, Right) => CaseId::TwoCutoffsLeftRight,
            _ => CaseId::Unclassified,
        },
        _ => CaseId::Unclassified,
    };
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference(gamma_t_db: f64) -> SystemParams {
        SystemParams::reference_defaults().with_transmit_snr_db(gamma_t_db)
    }

    #[test]
    fn tiny_power_is_full_outage() {
        let rep = classify_crossings(&reference(60.0), Scenario::Pwl).unwrap();
        assert_eq!(rep.case, CaseId::FullOutage);
        assert!(rep.degenerate);
        assert_eq!(rep.degenerate_value(), Some(1.0));
    }

    #[test]
    fn huge_power_is_no_outage() {
        let p = SystemParams {
            gamma_th: 1.0,
            ..reference(140.0)
        };
        let rep = classify_crossings(&p, Scenario::Fwl).unwrap();
        assert_eq!(rep.case, CaseId::NoOutage);
        assert_eq!(rep.degenerate_value(), Some(0.0));
    }

    #[test]
    fn lossless_scenarios_are_rejected() {
        assert!(classify_crossings(&reference(105.0), Scenario::Pwnl).is_err());
        assert!(classify_crossings(&reference(105.0).with_alpha(0.0), Scenario::Pwl).is_err());
    }

    #[test]
    fn roots_are_sorted_and_accurate() {
        for db in [102.0, 105.0, 108.0, 111.0, 114.0] {
            for s in [Scenario::Fwl, Scenario::Pwl] {
                let p = reference(db);
                let rep = classify_crossings(&p, s).unwrap();
                let prof = CrossingProfile::new(&p, s);
                for w in rep.g_roots.windows(2).chain(rep.f_roots.windows(2)) {
                    assert!(w[0].x < w[1].x);
                }
                for root in &rep.g_roots {
                    assert!(prof.g(root.x).abs() <= 1e-9, "{db} {s} g({})", root.x);
                }
                for root in &rep.f_roots {
                    assert!(prof.f(root.x).abs() <= 1e-9, "{db} {s} f({})", root.x);
                }
            }
        }
    }

    #[test]
    fn boundary_maximum_is_handled() {
        // Strong attenuation slope everywhere on the middle segment pushes the
        // maximiser of g to the far end of the waveguide.
        let p = SystemParams {
            alpha: 0.5,
            l: 3.0,
            ..reference(130.0)
        };
        let prof = CrossingProfile::new(&p, Scenario::Pwl);
        assert_eq!(prof.g_argmax(), 3.0);
    }

    #[test]
    fn segment_labels() {
        assert_eq!(Segment::of(-11.0, 10.0), Segment::Left);
        assert_eq!(Segment::of(-10.0, 10.0), Segment::Middle);
        assert_eq!(Segment::of(10.0, 10.0), Segment::Middle);
        assert_eq!(Segment::of(10.5, 10.0), Segment::Right);
    }
}
