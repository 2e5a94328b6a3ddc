//! Performance analysis of a single pinching-antenna link serving a device
//! uniformly placed in a circular room.
//!
//! The waveguide runs along the x-axis at height `h`, either across the full
//! diameter or over a centred segment `[-l, l]`, optionally with exponential
//! in-guide attenuation. For each of the four configurations ([`Scenario`])
//! the crate provides exact closed forms for the outage probability and
//! quadrature-based closed forms for the average achievable rate, together
//! with an independent seeded Monte-Carlo estimator used to validate them.

pub mod analysis;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod montecarlo;
pub mod numerics;
pub mod params;

pub use analysis::{LengthSearchResult, MetricResult};
pub use error::{Error, Result};
pub use montecarlo::{McEstimate, SnrModel};
pub use numerics::crossings::{CaseId, RootReport};
pub use params::{DerivedConstants, Scenario, SystemParams};
