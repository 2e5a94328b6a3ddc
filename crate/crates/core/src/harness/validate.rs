//! Oracle-agreement and consistency report.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{self, Metric};
use crate::error::Result;
use crate::montecarlo;
use crate::params::{Scenario, SystemParams};

use super::config::ValidateConfig;
use super::sweep::fmt_g;

/// Attenuation standing in for the lossless limit.
pub const ALPHA_LIMIT: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub group: &'static str,
    pub name: String,
    pub gap: f64,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub rows: Vec<CheckRow>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.pass).count()
    }

    fn push(&mut self, group: &'static str, name: String, gap: f64, bound: f64) {
        self.rows.push(CheckRow {
            group,
            name,
            gap,
            bound,
            pass: gap <= bound,
        });
    }

    /// Fixed-width table, one line per check, then per-group totals.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<12} {:<48} {:>14} {:>14}  result",
            "group", "check", "gap", "bound"
        );
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{:<12} {:<48} {:>14} {:>14}  {}",
                r.group,
                r.name,
                fmt_g(r.gap, 6),
                fmt_g(r.bound, 6),
                if r.pass { "PASS" } else { "FAIL" }
            );
        }
        let mut groups: Vec<&str> = self.rows.iter().map(|r| r.group).collect();
        groups.dedup();
        for g in groups {
            let total = self.rows.iter().filter(|r| r.group == g).count();
            let ok = self.rows.iter().filter(|r| r.group == g && r.pass).count();
            let _ = writeln!(s, "{g}: {ok}/{total} passed");
        }
        let _ = writeln!(
            s,
            "overall: {}",
            if self.all_passed() { "PASS" } else { "FAIL" }
        );
        s
    }
}

/// Random configuration over the validation box: `r ∈ [10, 40]`,
/// `h ∈ [3, 15]`, `alpha ∈ [0, 0.05]`, `l ∈ (0, r]`, transmit SNR in
/// `[85, 125]` dB, other fields at the reference defaults.
pub fn random_params<R: Rng + ?Sized>(rng: &mut R) -> SystemParams {
    let r = rng.gen_range(10.0..=40.0);
    let h = rng.gen_range(3.0..=15.0);
    let alpha = rng.gen_range(0.0..=0.05);
    let l = r * (1.0 - rng.gen::<f64>());
    let db = rng.gen_range(85.0..=125.0);
    SystemParams {
        r,
        h,
        alpha,
        l,
        ..SystemParams::reference_defaults()
    }
    .with_transmit_snr_db(db)
}

/// Runs the Monte-Carlo agreement, reproducibility and consistency checks.
pub fn run_validation(cfg: &ValidateConfig, nodes: usize) -> Result<ValidationReport> {
    let mut rep = ValidationReport::default();
    oracle_agreement(cfg, nodes, &mut rep)?;
    reproducibility(cfg, &mut rep)?;
    stderr_scaling(cfg, &mut rep)?;
    lattice(cfg, &mut rep)?;
    Ok(rep)
}

fn oracle_agreement(cfg: &ValidateConfig, nodes: usize, rep: &mut ValidationReport) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for draw in 0..cfg.draws {
        let p = random_params(&mut rng);
        let seed = cfg.seed.wrapping_add(draw as u64);
        for s in Scenario::ALL {
            for metric in [Metric::Outage, Metric::Rate] {
                let cf = analysis::evaluate(metric, s, &p, nodes)?.value;
                let (mc, slack) = match metric {
                    Metric::Outage => (
                        montecarlo::estimate_outage(s, &p, cfg.samples, seed)?,
                        cfg.outage_tolerance,
                    ),
                    Metric::Rate => (
                        montecarlo::estimate_rate(s, &p, cfg.samples, seed)?,
                        cfg.rate_tolerance,
                    ),
                };
                rep.push(
                    "oracle",
                    format!("draw {draw} {s} {metric}"),
                    (cf - mc.mean).abs(),
                    3.0 * mc.stderr + slack,
                );
            }
        }
    }
    Ok(())
}

fn reproducibility(cfg: &ValidateConfig, rep: &mut ValidationReport) -> Result<()> {
    let p = SystemParams::reference_defaults().with_transmit_snr_db(105.0);
    for s in Scenario::ALL {
        let reference =
            montecarlo::estimate_rate_with_workers(s, &p, cfg.samples, cfg.seed, Some(1))?;
        let mut worst: f64 = 0.0;
        for workers in [4, 8] {
            let other = montecarlo::estimate_rate_with_workers(
                s,
                &p,
                cfg.samples,
                cfg.seed,
                Some(workers),
            )?;
            let same = other == reference;
            worst = worst.max(if same {
                0.0
            } else {
                (other.mean - reference.mean).abs().max(f64::MIN_POSITIVE)
            });
        }
        rep.push("reproduce", format!("{s} rate, workers 1/4/8"), worst, 0.0);
    }
    Ok(())
}

fn stderr_scaling(cfg: &ValidateConfig, rep: &mut ValidationReport) -> Result<()> {
    let p = SystemParams::reference_defaults().with_transmit_snr_db(105.0);
    let n = cfg.samples.max(montecarlo::MIN_SAMPLES);
    for s in Scenario::ALL {
        let a = montecarlo::estimate_rate(s, &p, n, cfg.seed)?;
        let b = montecarlo::estimate_rate(s, &p, 4 * n, cfg.seed)?;
        let ratio = b.stderr / a.stderr;
        rep.push(
            "stderr",
            format!("{s} rate, stderr(4n)/stderr(n) vs 0.5"),
            (ratio - 0.5).abs(),
            0.1,
        );
    }
    Ok(())
}

fn lattice(cfg: &ValidateConfig, rep: &mut ValidationReport) -> Result<()> {
    let side = cfg.lattice.max(1);
    let nodes = cfg.lattice_nodes;
    let span = |i: usize, lo: f64, hi: f64| {
        if side == 1 {
            lo
        } else {
            lo + (hi - lo) * i as f64 / (side - 1) as f64
        }
    };
    // Per check, the (gap, bound) pair with the smallest margin.
    let mut worst: [Option<(f64, f64)>; 8] = [None; 8];
    let mut record = |k: usize, gap: f64, bound: f64| {
        if worst[k].is_none_or(|(g, b)| gap - bound > g - b) {
            worst[k] = Some((gap, bound));
        }
    };
    for i in 0..side {
        for j in 0..side {
            let p = SystemParams::reference_defaults()
                .with_radius(span(i, 10.0, 40.0))
                .with_transmit_snr_db(span(j, 90.0, 125.0));
            let p = p.with_half_length(0.5 * p.r);
            let full_len = p.with_half_length(p.r);
            let tiny = p.with_alpha(ALPHA_LIMIT);
            let pairs = [
                (Scenario::Pwnl, full_len, Scenario::Fwnl, full_len),
                (Scenario::Pwl, full_len, Scenario::Fwl, full_len),
                (Scenario::Fwl, tiny, Scenario::Fwnl, p),
                (Scenario::Pwl, tiny, Scenario::Pwnl, p),
            ];
            for (k, &(sa, pa, sb, pb)) in pairs.iter().enumerate() {
                let oa = analysis::outage(sa, &pa)?.value;
                let ob = analysis::outage(sb, &pb)?.value;
                let bound = if k < 2 {
                    cfg.lattice_outage_abs
                } else {
                    cfg.limit_outage_abs
                };
                record(2 * k, (oa - ob).abs(), bound);
                let ra = analysis::rate(sa, &pa, nodes)?.value;
                let rb = analysis::rate(sb, &pb, nodes)?.value;
                record(2 * k + 1, (ra - rb).abs() / rb.abs(), cfg.lattice_rate_rel);
            }
        }
    }
    let names = [
        "PWNL(l=r) vs FWNL",
        "PWL(l=r) vs FWL",
        "FWL(alpha->0) vs FWNL",
        "PWL(alpha->0) vs PWNL",
    ];
    for (k, name) in names.iter().enumerate() {
        let (gap, bound) = worst[2 * k].expect("lattice is non-empty");
        rep.push(
            "lattice",
            format!("{name} outage, worst of {}", side * side),
            gap,
            bound,
        );
        let (gap, bound) = worst[2 * k + 1].expect("lattice is non-empty");
        rep.push(
            "lattice",
            format!("{name} rate (relative), worst of {}", side * side),
            gap,
            bound,
        );
    }
    Ok(())
}
