//! Experiment harness: configuration, sweeps, figure presets and the
//! validation report.

pub mod config;
pub mod figures;
pub mod sweep;
pub mod validate;

pub use config::{
    parse_assignment, ParamOverrides, SweepConfig, SweptVar, ValidateConfig, ValidateFile,
};
pub use figures::{figure_config, FIGURE_IDS};
pub use sweep::{fmt_g12, run_sweep, write_text, SweepOutcome, SweepRow, CSV_HEADER};
pub use validate::{random_params, run_validation, ValidationReport};
