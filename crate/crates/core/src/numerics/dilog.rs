use std::f64::consts::PI;

use crate::error::{Error, Result};

const PI2_6: f64 = PI * PI / 6.0;

/// Real dilogarithm `Li2(z) = -∫_0^z ln(1-t)/t dt` for `z <= 0`.
pub fn dilog(z: f64) -> Result<f64> {
    if z.is_nan() || z > 0.0 {
        return Err(Error::Domain {
            func: "dilog",
            value: z,
            domain: "z <= 0",
        });
    }
    Ok(dilog_nonpositive(z))
}

/// `Li2(z)` for `z <= 0`; arguments are folded into `[-1/2, 1/2]`.
pub(crate) fn dilog_nonpositive(z: f64) -> f64 {
    debug_assert!(z <= 0.0);
    if z == 0.0 {
        0.0
    } else if z == f64::NEG_INFINITY {
        f64::NEG_INFINITY
    } else if z >= -0.5 {
        power_series(z)
    } else if z >= -1.0 {
        // Landen: Li2(z) = -Li2(z/(z-1)) - ln^2(1-z)/2, image in [1/3, 1/2].
        let w = z / (z - 1.0);
        let ln1mz = (-z).ln_1p();
        -power_series(w) - 0.5 * ln1mz * ln1mz
    } else {
        // Inversion: Li2(z) = -pi^2/6 - ln^2(-z)/2 - Li2(1/z).
        let ln = (-z).ln();
        -PI2_6 - 0.5 * ln * ln - dilog_nonpositive(1.0 / z)
    }
}

fn power_series(z: f64) -> f64 {
    debug_assert!(z.abs() <= 0.5 + 1e-15);
    let mut sum = 0.0;
    let mut zk = z;
    for k in 1..200u32 {
        let term = zk / f64::from(k * k);
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
        zk *= z;
    }
    sum
}
