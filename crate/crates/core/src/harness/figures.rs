//! Sweep presets for the six reference figures.
//!
//! Every preset starts from the reference defaults (`r = 25 m`, `h = 10 m`,
//! 28 GHz, `-90 dBm`, threshold 100, `alpha = 0.02`, `c = 3e8`) and only
//! lists what the figure changes.

use crate::error::{Error, Result};

use super::config::SweepConfig;

pub const FIGURE_IDS: [u32; 6] = [2, 3, 4, 5, 6, 7];

/// Outage (2) and rate (5) versus transmit SNR for two room sizes.
const SNR_BY_RADIUS: &str = r#"
scenarios = ["FWNL", "FWL", "PWNL", "PWL"]

[params]
light_speed = "rounded"

[sweep]
variable = "gamma_t_db"
start = 90
stop = 125
steps = 36

[mc]
enabled = true
samples = 100000
seed = 1

[[series]]
label = "r=15"
r = 15
l_over_r = 0.5

[[series]]
label = "r=25"
r = 25
l_over_r = 0.5
"#;

/// Outage (3) and rate (6) versus transmit SNR for several attenuations.
const SNR_BY_ALPHA: &str = r#"
scenarios = ["FWL", "PWL"]

[sweep]
variable = "gamma_t_db"
start = 90
stop = 125
steps = 36

[params]
l = 12.5
light_speed = "rounded"

[mc]
enabled = true
samples = 100000
seed = 1

[[series]]
label = "alpha=0.01"
alpha = 0.01

[[series]]
label = "alpha=0.02"
alpha = 0.02

[[series]]
label = "alpha=0.04"
alpha = 0.04
"#;

/// Outage (4) and rate (7) versus waveguide half-length.
const LENGTH_BY_ALPHA: &str = r#"
scenarios = ["PWL"]

[sweep]
variable = "l"
start = 0.25
stop = 25
steps = 100

[params]
gamma_t_db = 105
light_speed = "rounded"

[mc]
enabled = true
samples = 100000
seed = 1

[[series]]
label = "alpha=0.01"
alpha = 0.01

[[series]]
label = "alpha=0.02"
alpha = 0.02

[[series]]
label = "alpha=0.03"
alpha = 0.03

[[series]]
label = "alpha=0.04"
alpha = 0.04
"#;

/// Preset configuration of figure `id`.
pub fn figure_config(id: u32) -> Result<SweepConfig> {
    let (body, metric) = match id {
        2 => (SNR_BY_RADIUS, "outage"),
        3 => (SNR_BY_ALPHA, "outage"),
        4 => (LENGTH_BY_ALPHA, "outage"),
        5 => (SNR_BY_RADIUS, "rate"),
        6 => (SNR_BY_ALPHA, "rate"),
        7 => (LENGTH_BY_ALPHA, "rate"),
        _ => {
            return Err(Error::config(
                "figure",
                format!("unknown figure {id} (expected one of 2, 3, 4, 5, 6, 7)"),
            ))
        }
    };
    let mut cfg = SweepConfig::from_toml_str(&format!("metric = \"{metric}\"\n{body}"))?;
    cfg.output = Some(format!("fig{id}.csv").into());
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::Metric;
    use crate::params::Scenario;

    #[test]
    fn all_presets_parse() {
        for id in FIGURE_IDS {
            let cfg = figure_config(id).unwrap();
            let want = if id <= 4 {
                Metric::Outage
            } else {
                Metric::Rate
            };
            assert_eq!(cfg.metric, want);
        }
        assert!(figure_config(1).is_err());
        assert!(figure_config(8).is_err());
    }

    #[test]
    fn presets_keep_reference_defaults() {
        let cfg = figure_config(7).unwrap();
        let s = &cfg.effective_series()[1];
        let p = cfg.overrides_for(s, Scenario::Pwl).resolve().unwrap();
        assert_eq!(
            (p.r, p.h, p.f_c, p.gamma_th, p.alpha),
            (25.0, 10.0, 28e9, 100.0, 0.02)
        );
        assert!((p.sigma2 - 1e-12).abs() < 1e-24);
        assert!((p.transmit_snr_db() - 105.0).abs() < 1e-9);
        assert_eq!(p.light_speed, crate::params::LightSpeed::Rounded);
    }
}
