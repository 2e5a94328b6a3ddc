//! Seeded Monte-Carlo estimates of outage probability and average rate.
//!
//! Samples are split into fixed-size chunks. Chunk `k` draws from the
//! ChaCha8 stream `k` of the seed, so sample `i` always sees the same device
//! position no matter how chunks are scheduled. Chunk statistics are merged
//! in chunk order, which makes every estimate bit-identical across worker
//! counts.

use std::f64::consts::LN_2;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{clamp_pa_position, sample_uniform_disk, DevicePosition};
use crate::params::{Scenario, SystemParams};

/// Samples per random stream.
pub const CHUNK_SIZE: usize = 1 << 14;

/// Smallest accepted sample count.
pub const MIN_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub n_samples: usize,
    pub seed: u64,
}

/// Per-sample SNR evaluator with the scenario constants folded in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrModel {
    eta_snr: f64,
    l: f64,
    alpha: f64,
    h2: f64,
}

impl SnrModel {
    pub fn new(scenario: Scenario, p: &SystemParams) -> Self {
        SnrModel {
            eta_snr: p.derive().eta_snr,
            l: scenario.half_length(p),
            alpha: scenario.attenuation(p),
            h2: p.h * p.h,
        }
    }

    /// The antenna sits at the point of the waveguide nearest to the device;
    /// the guided distance is measured from the feed at `-l`.
    pub fn snr(&self, pos: DevicePosition) -> f64 {
        let x_p = clamp_pa_position(pos.x, self.l).x_p;
        let dx = pos.x - x_p;
        self.eta_snr * (-self.alpha * (x_p + self.l)).exp() / (dx * dx + pos.y * pos.y + self.h2)
    }
}

/// Received SNR (linear) of a device at `pos`.
pub fn snr_sample(scenario: Scenario, p: &SystemParams, pos: DevicePosition) -> f64 {
    SnrModel::new(scenario, p).snr(pos)
}

/// Running mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, v: f64) {
        self.n += 1;
        let d = v - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (v - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let d = other.mean - self.mean;
        let w = other.n as f64 / n as f64;
        Moments {
            n,
            mean: self.mean + d * w,
            m2: self.m2 + other.m2 + d * d * self.n as f64 * w,
        }
    }
}

fn check_samples(n: usize) -> Result<()> {
    if n < MIN_SAMPLES {
        return Err(Error::param(
            "n_samples",
            format!("need at least {MIN_SAMPLES} samples, got {n}"),
        ));
    }
    Ok(())
}

/// Applies `per_chunk` to every chunk in parallel and returns the results in
/// chunk order.
fn map_chunks<T, F>(
    p: &SystemParams,
    n: usize,
    seed: u64,
    workers: Option<usize>,
    per_chunk: F,
) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut dyn FnMut() -> DevicePosition, usize) -> T + Sync,
{
    let n_chunks = n.div_ceil(CHUNK_SIZE);
    let r = p.r;
    let job = || {
        (0..n_chunks)
            .into_par_iter()
            .map(|k| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(k as u64);
                let len = CHUNK_SIZE.min(n - k * CHUNK_SIZE);
                let mut draw = || sample_uniform_disk(&mut rng, r);
                per_chunk(&mut draw, len)
            })
            .collect::<Vec<T>>()
    };
    match workers {
        None => Ok(job()),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .map_err(|e| Error::param("workers", e.to_string()))?;
            Ok(pool.install(job))
        }
    }
}

pub fn estimate_outage(
    scenario: Scenario,
    p: &SystemParams,
    n_samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    estimate_outage_with_workers(scenario, p, n_samples, seed, None)
}

/// Like [`estimate_outage`] on a dedicated pool of `workers` threads
/// (`None` uses the global pool).
pub fn estimate_outage_with_workers(
    scenario: Scenario,
    p: &SystemParams,
    n_samples: usize,
    seed: u64,
    workers: Option<usize>,
) -> Result<McEstimate> {
    p.validate()?;
    check_samples(n_samples)?;
    let model = SnrModel::new(scenario, p);
    let counts = map_chunks(p, n_samples, seed, workers, |draw, len| {
        (0..len).filter(|_| model.snr(draw()) <= p.gamma_th).count() as u64
    })?;
    let n = n_samples as f64;
    let mean = counts.iter().sum::<u64>() as f64 / n;
    Ok(McEstimate {
        mean,
        stderr: (mean * (1.0 - mean) / n).max(0.0).sqrt(),
        n_samples,
        seed,
    })
}

pub fn estimate_rate(
    scenario: Scenario,
    p: &SystemParams,
    n_samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    estimate_rate_with_workers(scenario, p, n_samples, seed, None)
}

pub fn estimate_rate_with_workers(
    scenario: Scenario,
    p: &SystemParams,
    n_samples: usize,
    seed: u64,
    workers: Option<usize>,
) -> Result<McEstimate> {
    p.validate()?;
    check_samples(n_samples)?;
    let model = SnrModel::new(scenario, p);
    let parts = map_chunks(p, n_samples, seed, workers, |draw, len| {
        let mut m = Moments::default();
        for _ in 0..len {
            m.push(model.snr(draw()).ln_1p() / LN_2);
        }
        m
    })?;
    let total = parts.into_iter().fold(Moments::default(), Moments::merge);
    let n = n_samples as f64;
    let var = if total.n > 1 {
        total.m2 / (n - 1.0)
    } else {
        0.0
    };
    Ok(McEstimate {
        mean: total.mean,
        stderr: (var.max(0.0) / n).sqrt(),
        n_samples,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference(db: f64) -> SystemParams {
        SystemParams::reference_defaults().with_transmit_snr_db(db)
    }

    #[test]
    fn snr_examples() {
        let p = reference(105.0);
        let q = p.derive().eta_snr;
        let h2 = p.h * p.h;
        let under = DevicePosition { x: 7.0, y: 0.0 };
        assert_eq!(snr_sample(Scenario::Fwnl, &p, under), q / h2);
        let feed = DevicePosition { x: -p.r, y: 0.0 };
        assert_eq!(snr_sample(Scenario::Fwl, &p, feed), q / h2);
        let rim = DevicePosition { x: p.r, y: 0.0 };
        let expected = q * (-2.0 * p.alpha * p.l).exp() / (h2 + (p.r - p.l).powi(2));
        assert!((snr_sample(Scenario::Pwl, &p, rim) / expected - 1.0).abs() < 1e-15);
    }

    #[test]
    fn threshold_extremes() {
        let lo = SystemParams {
            gamma_th: 1e-300,
            ..reference(100.0)
        };
        let hi = SystemParams {
            gamma_th: 1e300,
            ..reference(100.0)
        };
        for s in Scenario::ALL {
            assert_eq!(estimate_outage(s, &lo, 2000, 1).unwrap().mean, 0.0);
            assert_eq!(estimate_outage(s, &hi, 2000, 1).unwrap().mean, 1.0);
        }
    }

    #[test]
    fn tiny_power_gives_tiny_rate() {
        let p = SystemParams {
            p_t: 1e-30,
            ..reference(100.0)
        };
        assert!(estimate_rate(Scenario::Pwl, &p, 5000, 3).unwrap().mean < 1e-9);
    }

    #[test]
    fn rejects_small_sample_counts() {
        assert!(estimate_outage(Scenario::Fwnl, &reference(100.0), 999, 0).is_err());
    }

    #[test]
    fn partial_full_length_matches_full_coverage_samplewise() {
        let p = reference(108.0).with_half_length(25.0);
        let a = estimate_rate(Scenario::Pwl, &p, 40_000, 11).unwrap();
        let b = estimate_rate(Scenario::Fwl, &p, 40_000, 11).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn moments_merge_matches_single_pass() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 * 0.1).collect();
        let mut whole = Moments::default();
        xs.iter().for_each(|&v| whole.push(v));
        let (mut a, mut b) = (Moments::default(), Moments::default());
        xs[..313].iter().for_each(|&v| a.push(v));
        xs[313..].iter().for_each(|&v| b.push(v));
        let merged = a.merge(b);
        assert!((merged.mean - whole.mean).abs() < 1e-12);
        assert!((merged.m2 - whole.m2).abs() < 1e-9 * whole.m2);
    }
}
