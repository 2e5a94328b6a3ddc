//! Gauss–Chebyshev (first kind) quadrature.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Node count used by the rate closed forms unless configured otherwise.
pub const DEFAULT_NODES: usize = 200;

/// Nodes `t_k = cos((2k-1) pi / (2V))`, `k = 1..=V`, with common weight `pi/V`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    nodes: Vec<f64>,
}

impl QuadratureSpec {
    pub fn new(count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::param("nodes", "quadrature needs at least one node"));
        }
        let mut nodes = vec![0.0; count];
        // Fill the upper half and mirror, so the node set is exactly symmetric.
        for k in 0..count.div_ceil(2) {
            let t = ((2 * k + 1) as f64 * PI / (2 * count) as f64).cos();
            nodes[k] = t;
            nodes[count - 1 - k] = -t;
        }
        if count % 2 == 1 {
            nodes[count / 2] = 0.0;
        }
        Ok(QuadratureSpec { nodes })
    }

    pub fn count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weight_scale(&self) -> f64 {
        PI / self.nodes.len() as f64
    }

    /// `(pi/V) Σ f(t_k)`, approximating `∫_{-1}^{1} f(t) / sqrt(1 - t^2) dt`.
    pub fn weighted_sum<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.weight_scale() * self.nodes.iter().map(|&t| f(t)).sum::<f64>()
    }

    /// `(pi/V) Σ sqrt(1 - t_k^2) f(t_k)`, approximating `∫_{-1}^{1} f(t) dt`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.weighted_sum(|t| ((1.0 - t) * (1.0 + t)).sqrt() * f(t))
    }

    /// `∫_a^b f(x) dx` through the affine map `x = (b-a)/2 t + (b+a)/2`.
    pub fn integrate_interval<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        half * self.integrate(|t| f(half * t + mid))
    }
}

/// Weighted Gauss–Chebyshev sum `(pi/V) Σ f(t_k)`.
pub fn gauss_chebyshev<F: FnMut(f64) -> f64>(spec: &QuadratureSpec, f: F) -> f64 {
    spec.weighted_sum(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_are_symmetric_and_decreasing() {
        for v in [1, 2, 3, 16, 17, 200] {
            let q = QuadratureSpec::new(v).unwrap();
            let n = q.nodes();
            assert!(n.windows(2).all(|w| w[0] > w[1]));
            assert!(n.iter().all(|t| t.abs() < 1.0));
            for k in 0..v {
                assert_eq!(n[k], -n[v - 1 - k]);
            }
        }
        assert!(QuadratureSpec::new(0).is_err());
    }

    #[test]
    fn semicircle_area_is_exact() {
        let q = QuadratureSpec::new(16).unwrap();
        let v = q.integrate(|t| (1.0 - t * t).sqrt());
        assert!((v - PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn weights_sum_to_pi() {
        let q = QuadratureSpec::new(37).unwrap();
        assert!((gauss_chebyshev(&q, |_| 1.0) - PI).abs() < 1e-14);
    }

    #[test]
    fn odd_integrand_vanishes() {
        for v in [2, 3, 10, 101] {
            let q = QuadratureSpec::new(v).unwrap();
            assert!(gauss_chebyshev(&q, |t| t).abs() < 1e-15);
        }
    }

    #[test]
    fn interval_map() {
        let q = QuadratureSpec::new(64).unwrap();
        // Half-disk of radius 3 centred at 2.
        let v = q.integrate_interval(-1.0, 5.0, |x| (9.0 - (x - 2.0) * (x - 2.0)).max(0.0).sqrt());
        assert!((v - 4.5 * PI).abs() < 1e-12);
    }
}
