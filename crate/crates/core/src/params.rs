//! Physical configuration, unit conversions and the derived shorthand
//! constants shared by every closed form.
//!
//! All quantities are SI and linear internally; dB and dBm only appear in
//! the conversion helpers and in the harness configuration.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// CODATA speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;

/// Rounded speed of light used when replicating the reference figures.
pub const SPEED_OF_LIGHT_ROUNDED: f64 = 3.0e8;

/// Which value of `c` enters the free-space loss factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LightSpeed {
    #[default]
    Codata,
    /// `c = 3e8 m/s`.
    Rounded,
}

impl LightSpeed {
    pub fn value(self) -> f64 {
        match self {
            LightSpeed::Codata => SPEED_OF_LIGHT,
            LightSpeed::Rounded => SPEED_OF_LIGHT_ROUNDED,
        }
    }
}

/// Power in dBm to watts.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

pub fn watts_to_dbm(watts: f64) -> f64 {
    10.0 * watts.log10() + 30.0
}

/// Ratio in dB to a linear ratio.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(ratio: f64) -> f64 {
    10.0 * ratio.log10()
}

/// One of the four analysed waveguide configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Scenario {
    /// Full coverage, lossless waveguide.
    #[serde(rename = "FWNL")]
    Fwnl,
    /// Full coverage, lossy waveguide.
    #[serde(rename = "FWL")]
    Fwl,
    /// Partial coverage, lossless waveguide.
    #[serde(rename = "PWNL")]
    Pwnl,
    /// Partial coverage, lossy waveguide.
    #[serde(rename = "PWL")]
    Pwl,
}

impl Scenario {
    pub const ALL: [Scenario; 4] = [Scenario::Fwnl, Scenario::Fwl, Scenario::Pwnl, Scenario::Pwl];

    pub fn tag(self) -> &'static str {
        match self {
            Scenario::Fwnl => "FWNL",
            Scenario::Fwl => "FWL",
            Scenario::Pwnl => "PWNL",
            Scenario::Pwl => "PWL",
        }
    }

    pub fn is_full(self) -> bool {
        matches!(self, Scenario::Fwnl | Scenario::Fwl)
    }

    pub fn is_lossy(self) -> bool {
        matches!(self, Scenario::Fwl | Scenario::Pwl)
    }

    /// Waveguide half-length seen by this scenario: `r` for full coverage.
    pub fn half_length(self, p: &SystemParams) -> f64 {
        if self.is_full() {
            p.r
        } else {
            p.l
        }
    }

    /// Attenuation seen by this scenario: zero for the lossless variants.
    pub fn attenuation(self, p: &SystemParams) -> f64 {
        if self.is_lossy() {
            p.alpha
        } else {
            0.0
        }
    }

    /// Parameters with the scenario's implied `l` and `alpha` substituted.
    pub fn effective(self, p: &SystemParams) -> SystemParams {
        SystemParams {
            l: self.half_length(p),
            alpha: self.attenuation(p),
            ..*p
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "FWNL" => Ok(Scenario::Fwnl),
            "FWL" => Ok(Scenario::Fwl),
            "PWNL" => Ok(Scenario::Pwnl),
            "PWL" => Ok(Scenario::Pwl),
            _ => Err(Error::config(
                "scenario",
                format!("unknown scenario `{s}` (expected FWNL, FWL, PWNL or PWL)"),
            )),
        }
    }
}

/// Full physical configuration of the link.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    /// Region radius, m.
    pub r: f64,
    /// Waveguide height above the floor, m.
    pub h: f64,
    /// Carrier frequency, Hz.
    pub f_c: f64,
    /// Noise power, W.
    pub sigma2: f64,
    /// Transmit power, W.
    pub p_t: f64,
    /// In-guide attenuation coefficient, 1/m.
    pub alpha: f64,
    /// Waveguide half-length, m. Ignored by the full-coverage scenarios.
    pub l: f64,
    /// Linear SNR outage threshold.
    pub gamma_th: f64,
    pub light_speed: LightSpeed,
}

impl SystemParams {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        r: f64,
        h: f64,
        f_c: f64,
        sigma2: f64,
        p_t: f64,
        alpha: f64,
        l: f64,
        gamma_th: f64,
    ) -> Result<Self> {
        let p = SystemParams {
            r,
            h,
            f_c,
            sigma2,
            p_t,
            alpha,
            l,
            gamma_th,
            light_speed: LightSpeed::Codata,
        };
        p.validate()?;
        Ok(p)
    }

    /// The reference evaluation setup: `r = 25 m`, `h = 10 m`, 28 GHz,
    /// `-90 dBm` noise, threshold 100 (linear), `alpha = 0.02 /m`,
    /// `c = 3e8`. Transmit power defaults to a 100 dB transmit SNR and the
    /// half-length to `r / 2`.
    pub fn reference_defaults() -> Self {
        let sigma2 = dbm_to_watts(-90.0);
        SystemParams {
            r: 25.0,
            h: 10.0,
            f_c: 28e9,
            sigma2,
            p_t: sigma2 * db_to_linear(100.0),
            alpha: 0.02,
            l: 12.5,
            gamma_th: 100.0,
            light_speed: LightSpeed::Rounded,
        }
    }

    /// Sets `p_t` so that `p_t / sigma2` equals the given transmit SNR.
    pub fn with_transmit_snr_db(self, gamma_t_db: f64) -> Self {
        SystemParams {
            p_t: self.sigma2 * db_to_linear(gamma_t_db),
            ..self
        }
    }

    pub fn transmit_snr_db(&self) -> f64 {
        linear_to_db(self.p_t / self.sigma2)
    }

    pub fn with_alpha(self, alpha: f64) -> Self {
        SystemParams { alpha, ..self }
    }

    pub fn with_half_length(self, l: f64) -> Self {
        SystemParams { l, ..self }
    }

    pub fn with_radius(self, r: f64) -> Self {
        SystemParams { r, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        fn positive(field: &str, v: f64) -> Result<()> {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::param(
                    field,
                    format!("must be finite and > 0, got {v}"),
                ))
            }
        }
        positive("r", self.r)?;
        positive("h", self.h)?;
        positive("f_c", self.f_c)?;
        positive("sigma2", self.sigma2)?;
        positive("p_t", self.p_t)?;
        positive("gamma_th", self.gamma_th)?;
        positive("l", self.l)?;
        if !(self.alpha.is_finite() && self.alpha >= 0.0) {
            return Err(Error::param(
                "alpha",
                format!("must be finite and >= 0, got {}", self.alpha),
            ));
        }
        if self.l > self.r {
            return Err(Error::param(
                "l",
                format!("half-length {} exceeds the radius {}", self.l, self.r),
            ));
        }
        Ok(())
    }

    pub fn derive(&self) -> DerivedConstants {
        derive_constants(self)
    }
}

/// Shorthand constants of the closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedConstants {
    /// Free-space loss factor at 1 m, `c^2 / (16 pi^2 f_c^2)`, m^2.
    pub eta: f64,
    /// `eta P_t / sigma2`, m^2.
    pub eta_snr: f64,
    /// `C - h^2`, m^2. The squared horizontal reach of the lossless link.
    pub a: f64,
    /// `eta P_t + sigma2 h^2`, W m^2.
    pub b: f64,
    /// `eta P_t / (sigma2 gamma_th)`, m^2.
    pub c: f64,
    /// `sqrt(1 + sigma2 r^2 / B)`.
    pub gamma: f64,
    /// `sqrt(1 + r^2 / h^2)`.
    pub lambda: f64,
}

pub fn derive_constants(p: &SystemParams) -> DerivedConstants {
    let c_light = p.light_speed.value();
    let eta = c_light * c_light / (16.0 * PI * PI * p.f_c * p.f_c);
    let eta_snr = eta * p.p_t / p.sigma2;
    let c = eta_snr / p.gamma_th;
    let b = eta * p.p_t + p.sigma2 * p.h * p.h;
    DerivedConstants {
        eta,
        eta_snr,
        a: c - p.h * p.h,
        b,
        c,
        gamma: (1.0 + p.sigma2 * p.r * p.r / b).sqrt(),
        lambda: (1.0 + p.r * p.r / (p.h * p.h)).sqrt(),
    }
}
