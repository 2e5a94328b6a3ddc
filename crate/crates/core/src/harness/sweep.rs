//! Closed-form and Monte-Carlo sweeps written as CSV tables.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use rayon::prelude::*;

use crate::analysis::{self, Metric};
use crate::error::{Error, Result};
use crate::montecarlo::{self, McEstimate};
use crate::params::Scenario;

use super::config::{SweepConfig, SweptVar};

pub const CSV_HEADER: &str =
    "swept_var,swept_value,scenario,closed_form,mc_mean,mc_stderr,case_id,abs_gap,pass";

/// One grid point of one scenario curve.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub swept_var: SweptVar,
    pub swept_value: f64,
    pub scenario: Scenario,
    /// Curve name: the scenario tag, suffixed with the series label.
    pub label: String,
    pub closed_form: f64,
    pub mc: Option<McEstimate>,
    pub case_id: Option<String>,
    pub abs_gap: Option<f64>,
    pub pass: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub metric: Metric,
    pub rows: Vec<SweepRow>,
}

impl SweepOutcome {
    pub fn passed(&self) -> usize {
        self.rows.iter().filter(|r| r.pass == Some(true)).count()
    }

    pub fn failed(&self) -> usize {
        self.rows.iter().filter(|r| r.pass == Some(false)).count()
    }

    pub fn summary(&self) -> String {
        let checked = self.passed() + self.failed();
        if checked == 0 {
            format!("{} rows, Monte-Carlo disabled", self.rows.len())
        } else {
            format!(
                "{} rows, {} passed, {} failed",
                self.rows.len(),
                self.passed(),
                self.failed()
            )
        }
    }

    /// Values of one curve in grid order.
    pub fn curve(&self, label: &str) -> Vec<(f64, f64)> {
        self.rows
            .iter()
            .filter(|r| r.label == label)
            .map(|r| (r.swept_value, r.closed_form))
            .collect()
    }

    /// Curve labels in first-appearance order.
    pub fn labels(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.label) {
                out.push(r.label.clone());
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::with_capacity(64 * (self.rows.len() + 1));
        s.push_str(CSV_HEADER);
        s.push('\n');
        for r in &self.rows {
            let opt = |v: Option<f64>| v.map(fmt_g12).unwrap_or_default();
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{}",
                r.swept_var,
                fmt_g12(r.swept_value),
                r.label,
                fmt_g12(r.closed_form),
                opt(r.mc.map(|m| m.mean)),
                opt(r.mc.map(|m| m.stderr)),
                r.case_id.as_deref().unwrap_or(""),
                opt(r.abs_gap),
                r.pass
                    .map(|p| if p { "true" } else { "false" })
                    .unwrap_or(""),
            );
        }
        s
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        write_text(path, &self.to_csv())
    }

    /// Gnuplot script plotting every curve of `csv_path` against the swept
    /// variable, with Monte-Carlo points when present.
    pub fn gnuplot_script(&self, csv_path: &Path) -> String {
        let csv = csv_path.display();
        let ylabel = match self.metric {
            Metric::Outage => "Outage probability",
            Metric::Rate => "Average rate [bit/s/Hz]",
        };
        let xvar = self
            .rows
            .first()
            .map(|r| r.swept_var.as_str())
            .unwrap_or("x");
        let has_mc = self.rows.iter().any(|r| r.mc.is_some());
        let mut s = String::new();
        let _ = writeln!(s, "set datafile separator ','");
        let _ = writeln!(s, "set key outside right");
        let _ = writeln!(s, "set grid");
        let _ = writeln!(s, "set xlabel '{xvar}'");
        let _ = writeln!(s, "set ylabel '{ylabel}'");
        if self.metric == Metric::Outage {
            let _ = writeln!(s, "set logscale y");
        }
        let mut plots = Vec::new();
        for label in self.labels() {
            let sel = format!("(strcol(3) eq '{label}' ? $4 : 1/0)");
            plots.push(format!(
                "'{csv}' every ::1 using 2:{sel} with lines title '{label}'"
            ));
            if has_mc {
                let mc = format!("(strcol(3) eq '{label}' ? $5 : 1/0)");
                plots.push(format!(
                    "'{csv}' every ::1 using 2:{mc} with points notitle"
                ));
            }
        }
        let _ = writeln!(s, "plot {}", plots.join(", \\\n     "));
        s
    }
}

/// Writes `text` to `path`, creating parent directories.
pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let mut f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(text.as_bytes()).map_err(|e| Error::io(path, e))
}

/// `%.12g`-style formatting.
pub fn fmt_g12(v: f64) -> String {
    fmt_g(v, 12)
}

pub fn fmt_g(v: f64, digits: usize) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let m = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_fraction(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Evaluates every (series, scenario, grid point) of the configuration.
///
/// Points run in parallel; rows come back in grid order. Every Monte-Carlo
/// estimate reuses the configured seed.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutcome> {
    cfg.validate()?;
    let grid = cfg.sweep.points();
    let mut jobs = Vec::new();
    for series in cfg.effective_series() {
        for &scenario in &cfg.scenarios {
            let label = if series.label.is_empty() {
                scenario.tag().to_string()
            } else {
                format!("{}/{}", scenario.tag(), series.label)
            };
            let base = cfg.overrides_for(&series, scenario);
            for &x in &grid {
                jobs.push((
                    scenario,
                    label.clone(),
                    base.with_swept(cfg.sweep.variable, x),
                    x,
                ));
            }
        }
    }
    let rows = jobs
        .into_par_iter()
        .map(|(scenario, label, overrides, x)| {
            let p = overrides.resolve()?;
            let cf = analysis::evaluate(cfg.metric, scenario, &p, cfg.quadrature_nodes)?;
            let mut row = SweepRow {
                swept_var: cfg.sweep.variable,
                swept_value: x,
                scenario,
                label,
                closed_form: cf.value,
                mc: None,
                case_id: cf.case_id.map(|c| c.as_str().to_string()),
                abs_gap: None,
                pass: None,
            };
            if cfg.mc.enabled {
                let est = match cfg.metric {
                    Metric::Outage => {
                        montecarlo::estimate_outage(scenario, &p, cfg.mc.samples, cfg.mc.seed)?
                    }
                    Metric::Rate => {
                        montecarlo::estimate_rate(scenario, &p, cfg.mc.samples, cfg.mc.seed)?
                    }
                };
                let slack = match cfg.metric {
                    Metric::Outage => cfg.mc.tolerance,
                    Metric::Rate => cfg.mc.rate_tolerance,
                };
                let gap = (cf.value - est.mean).abs();
                row.mc = Some(est);
                row.abs_gap = Some(gap);
                row.pass = Some(gap <= 3.0 * est.stderr + slack);
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepOutcome {
        metric: cfg.metric,
        rows,
    })
}
