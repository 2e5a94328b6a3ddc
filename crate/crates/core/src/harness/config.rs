//! Sweep configuration files and command-line overrides.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use crate::analysis::Metric;
use crate::error::{Error, Result};
use crate::numerics::DEFAULT_NODES;
use crate::params::{db_to_linear, dbm_to_watts, LightSpeed, Scenario, SystemParams};

/// Parameter that a sweep varies along its grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
pub enum SweptVar {
    #[serde(rename = "gamma_t_db")]
    TransmitSnrDb,
    #[serde(rename = "l")]
    HalfLength,
    #[serde(rename = "alpha")]
    Alpha,
    #[serde(rename = "r")]
    Radius,
}

impl SweptVar {
    pub fn as_str(self) -> &'static str {
        match self {
            SweptVar::TransmitSnrDb => "gamma_t_db",
            SweptVar::HalfLength => "l",
            SweptVar::Alpha => "alpha",
            SweptVar::Radius => "r",
        }
    }
}

impl fmt::Display for SweptVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SweptVar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "gamma_t_db" => Ok(SweptVar::TransmitSnrDb),
            "l" => Ok(SweptVar::HalfLength),
            "alpha" => Ok(SweptVar::Alpha),
            "r" => Ok(SweptVar::Radius),
            _ => Err(Error::config(
                "sweep.variable",
                format!("unknown variable `{s}` (expected gamma_t_db, l, alpha or r)"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThresholdUnit {
    #[default]
    Linear,
    Db,
}

/// Evenly spaced grid including both ends.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub variable: SweptVar,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        let n = self.steps;
        let step = (self.stop - self.start) / (n - 1) as f64;
        (0..n)
            .map(|i| {
                if i + 1 == n {
                    self.stop
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }
}

/// Partial parameter set layered over the defaults.
///
/// Powers are given in dB/dBm, lengths in metres.
#[derive(Debug, Clone, Copy, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamOverrides {
    pub r: Option<f64>,
    pub h: Option<f64>,
    pub f_c: Option<f64>,
    pub noise_dbm: Option<f64>,
    pub gamma_t_db: Option<f64>,
    pub alpha: Option<f64>,
    pub l: Option<f64>,
    /// Half-length as a fraction of the radius; wins over `l`.
    pub l_over_r: Option<f64>,
    pub gamma_th: Option<f64>,
    pub threshold_unit: Option<ThresholdUnit>,
    pub light_speed: Option<LightSpeed>,
}

impl ParamOverrides {
    /// Fields set in `other` replace those set here.
    pub fn merged(&self, other: &ParamOverrides) -> ParamOverrides {
        ParamOverrides {
            r: other.r.or(self.r),
            h: other.h.or(self.h),
            f_c: other.f_c.or(self.f_c),
            noise_dbm: other.noise_dbm.or(self.noise_dbm),
            gamma_t_db: other.gamma_t_db.or(self.gamma_t_db),
            alpha: other.alpha.or(self.alpha),
            l: other.l.or(self.l),
            l_over_r: other.l_over_r.or(self.l_over_r),
            gamma_th: other.gamma_th.or(self.gamma_th),
            threshold_unit: other.threshold_unit.or(self.threshold_unit),
            light_speed: other.light_speed.or(self.light_speed),
        }
    }

    /// Sets one field from `key=value` text.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let num = || -> Result<f64> {
            value
                .trim()
                .parse::<f64>()
                .map_err(|_| Error::config(key, format!("`{value}` is not a number")))
        };
        match key.trim() {
            "r" => self.r = Some(num()?),
            "h" => self.h = Some(num()?),
            "f_c" => self.f_c = Some(num()?),
            "noise_dbm" => self.noise_dbm = Some(num()?),
            "gamma_t_db" => self.gamma_t_db = Some(num()?),
            "alpha" => self.alpha = Some(num()?),
            "l" => self.l = Some(num()?),
            "l_over_r" => self.l_over_r = Some(num()?),
            "gamma_th" => self.gamma_th = Some(num()?),
            "threshold_unit" => {
                self.threshold_unit = Some(match value.trim() {
                    "linear" => ThresholdUnit::Linear,
                    "db" => ThresholdUnit::Db,
                    _ => return Err(Error::config(key, format!("`{value}` is not linear or db"))),
                })
            }
            "light_speed" => {
                self.light_speed = Some(match value.trim() {
                    "codata" => LightSpeed::Codata,
                    "rounded" => LightSpeed::Rounded,
                    _ => {
                        return Err(Error::config(
                            key,
                            format!("`{value}` is not codata or rounded"),
                        ))
                    }
                })
            }
            other => return Err(Error::config(other, "unknown parameter")),
        }
        Ok(())
    }

    /// Builds validated parameters on top of the reference defaults, with
    /// the CODATA speed of light unless `light_speed` says otherwise.
    pub fn resolve(&self) -> Result<SystemParams> {
        let mut p = SystemParams::reference_defaults();
        p.light_speed = LightSpeed::Codata;
        if let Some(v) = self.r {
            p.r = v;
        }
        if let Some(v) = self.h {
            p.h = v;
        }
        if let Some(v) = self.f_c {
            p.f_c = v;
        }
        if let Some(v) = self.noise_dbm {
            p.sigma2 = dbm_to_watts(v);
        }
        p = p.with_transmit_snr_db(self.gamma_t_db.unwrap_or(100.0));
        if let Some(v) = self.alpha {
            p.alpha = v;
        }
        p.l = match (self.l_over_r, self.l) {
            (Some(f), _) => f * p.r,
            (None, Some(l)) => l,
            (None, None) => 0.5 * p.r,
        };
        if let Some(v) = self.gamma_th {
            p.gamma_th = match self.threshold_unit.unwrap_or_default() {
                ThresholdUnit::Linear => v,
                ThresholdUnit::Db => db_to_linear(v),
            };
        }
        if let Some(v) = self.light_speed {
            p.light_speed = v;
        }
        p.validate().map_err(|e| match e {
            Error::InvalidParam { field, reason } => Error::Config {
                field: format!("params.{field}"),
                reason,
            },
            other => other,
        })?;
        Ok(p)
    }

    /// Copy with the swept variable pinned to `value`.
    pub fn with_swept(&self, var: SweptVar, value: f64) -> ParamOverrides {
        let mut o = *self;
        match var {
            SweptVar::TransmitSnrDb => o.gamma_t_db = Some(value),
            SweptVar::HalfLength => {
                o.l = Some(value);
                o.l_over_r = None;
            }
            SweptVar::Alpha => o.alpha = Some(value),
            SweptVar::Radius => o.r = Some(value),
        }
        o
    }
}

/// One labelled curve family: the sweep is repeated once per series.
#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Series {
    pub label: String,
    #[serde(flatten)]
    pub params: ParamOverrides,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct McConfig {
    pub enabled: bool,
    pub samples: usize,
    pub seed: u64,
    /// Absolute slack added to `3 stderr` for outage rows.
    pub tolerance: f64,
    /// Absolute slack added to `3 stderr` for rate rows.
    pub rate_tolerance: f64,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig {
            enabled: false,
            samples: 100_000,
            seed: 1,
            tolerance: 1e-4,
            rate_tolerance: 0.0,
        }
    }
}

/// Settings of the `validate` report.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ValidateConfig {
    /// Random parameter draws per scenario for the oracle-agreement check.
    pub draws: usize,
    pub samples: usize,
    pub seed: u64,
    pub outage_tolerance: f64,
    pub rate_tolerance: f64,
    /// Grid side of the consistency lattice.
    pub lattice: usize,
    /// Quadrature order of the lattice rate checks.
    pub lattice_nodes: usize,
    /// Outage tolerance of the identities at `l = r`.
    pub lattice_outage_abs: f64,
    /// Outage tolerance of the small-attenuation limits, which differ from
    /// the lossless values by roughly `alpha * dP/dalpha`.
    pub limit_outage_abs: f64,
    pub lattice_rate_rel: f64,
}

impl Default for ValidateConfig {
    fn default() -> Self {
        ValidateConfig {
            draws: 10,
            samples: 200_000,
            seed: 1,
            outage_tolerance: 1e-4,
            rate_tolerance: 0.0,
            lattice: 10,
            lattice_nodes: 2000,
            lattice_outage_abs: 1e-9,
            limit_outage_abs: 1e-6,
            lattice_rate_rel: 1e-6,
        }
    }
}

/// Complete description of a sweep.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default = "default_metric")]
    pub metric: Metric,
    pub scenarios: Vec<Scenario>,
    #[serde(default = "default_nodes")]
    pub quadrature_nodes: usize,
    #[serde(default)]
    pub output: Option<PathBuf>,
    /// Optional gnuplot script written next to the CSV.
    #[serde(default)]
    pub gnuplot: Option<PathBuf>,
    pub sweep: Grid,
    #[serde(default)]
    pub params: ParamOverrides,
    /// Per-scenario overrides, keyed by scenario tag.
    #[serde(default)]
    pub scenario: std::collections::BTreeMap<Scenario, ParamOverrides>,
    #[serde(default)]
    pub series: Vec<Series>,
    #[serde(default)]
    pub mc: McConfig,
    #[serde(default)]
    pub validate: ValidateConfig,
    /// Overrides applied after every other layer, e.g. from the command line.
    #[serde(skip)]
    pub forced: ParamOverrides,
}

fn default_metric() -> Metric {
    Metric::Outage
}

fn default_nodes() -> usize {
    DEFAULT_NODES
}

impl SweepConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: SweepConfig = toml::from_str(text).map_err(|e| {
            let field = e
                .message()
                .split('`')
                .nth(1)
                .unwrap_or("config")
                .to_string();
            Error::config(field, e.to_string().trim_end())
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    /// Series to run; a single unlabelled one when none are configured.
    pub fn effective_series(&self) -> Vec<Series> {
        if self.series.is_empty() {
            vec![Series::default()]
        } else {
            self.series.clone()
        }
    }

    /// Overrides for one row before the swept value is applied.
    pub fn overrides_for(&self, series: &Series, scenario: Scenario) -> ParamOverrides {
        let base = self.params.merged(&series.params);
        let base = match self.scenario.get(&scenario) {
            Some(o) => base.merged(o),
            None => base,
        };
        base.merged(&self.forced)
    }

    pub fn validate(&self) -> Result<()> {
        if self.scenarios.is_empty() {
            return Err(Error::config(
                "scenarios",
                "at least one scenario is required",
            ));
        }
        if self.quadrature_nodes < 2 {
            return Err(Error::config("quadrature_nodes", "must be at least 2"));
        }
        let g = &self.sweep;
        if g.steps < 2 {
            return Err(Error::config("sweep.steps", "must be at least 2"));
        }
        if !(g.start.is_finite() && g.stop.is_finite()) || g.start >= g.stop {
            return Err(Error::config("sweep.start", "need finite start < stop"));
        }
        if self.mc.enabled && self.mc.samples < crate::montecarlo::MIN_SAMPLES {
            return Err(Error::config(
                "mc.samples",
                format!("must be at least {}", crate::montecarlo::MIN_SAMPLES),
            ));
        }
        if !(self.mc.tolerance >= 0.0 && self.mc.rate_tolerance >= 0.0) {
            return Err(Error::config("mc.tolerance", "must be non-negative"));
        }
        let mut labels = std::collections::HashSet::new();
        for s in &self.series {
            if s.label.contains([',', '"', '\n', '\r']) {
                return Err(Error::config(
                    "series.label",
                    format!("`{}` contains a CSV delimiter", s.label),
                ));
            }
            if !labels.insert(s.label.as_str()) {
                return Err(Error::config(
                    "series.label",
                    format!("duplicate label `{}`", s.label),
                ));
            }
        }
        // Every grid point must yield valid parameters.
        for series in self.effective_series() {
            for &scenario in &self.scenarios {
                let o = self.overrides_for(&series, scenario);
                for x in [g.start, g.stop] {
                    o.with_swept(g.variable, x).resolve()?;
                }
            }
        }
        Ok(())
    }
}

/// Validation settings read from a configuration file; other sections are
/// ignored so a sweep file can be reused.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
pub struct ValidateFile {
    #[serde(default = "default_nodes")]
    pub quadrature_nodes: usize,
    #[serde(default)]
    pub validate: ValidateConfig,
}

impl ValidateFile {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let f: ValidateFile = toml::from_str(text).map_err(|e| {
            let field = e
                .message()
                .split('`')
                .nth(1)
                .unwrap_or("validate")
                .to_string();
            Error::config(field, e.to_string().trim_end())
        })?;
        if f.quadrature_nodes < 2 {
            return Err(Error::config("quadrature_nodes", "must be at least 2"));
        }
        if f.validate.samples < crate::montecarlo::MIN_SAMPLES {
            return Err(Error::config(
                "validate.samples",
                format!("must be at least {}", crate::montecarlo::MIN_SAMPLES),
            ));
        }
        Ok(f)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }
}

/// Splits `key=value`.
pub fn parse_assignment(text: &str) -> Result<(String, String)> {
    match text.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
        _ => Err(Error::config(
            "set",
            format!("expected key=value, got `{text}`"),
        )),
    }
}
