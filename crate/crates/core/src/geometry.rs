//! Planar geometry of the disk-shaped room.

use std::f64::consts::PI;

use rand::Rng;

use crate::error::{Error, Result};

/// Relative slack before an out-of-domain argument becomes an error.
pub const DOMAIN_TOL: f64 = 1e-12;

/// Device location on the floor (`z = 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DevicePosition {
    pub x: f64,
    pub y: f64,
}

/// Pinching-antenna abscissa on the waveguide line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PaPosition {
    pub x_p: f64,
}

/// Half-height `sqrt(r^2 - x^2)` of the vertical chord at abscissa `x`.
pub fn chord_half_height(x: f64, r: f64) -> Result<f64> {
    let excess = x.abs() - r;
    if excess > DOMAIN_TOL * r {
        return Err(Error::Domain {
            func: "chord_half_height",
            value: x,
            domain: "|x| <= r",
        });
    }
    if excess >= 0.0 {
        return Ok(0.0);
    }
    Ok(((r - x) * (r + x)).sqrt())
}

/// `sqrt(r^2 - x^2)` clamped to zero outside the disk.
pub(crate) fn rho(x: f64, r: f64) -> f64 {
    ((r - x) * (r + x)).max(0.0).sqrt()
}

/// CDF of `|y|` for a device uniform on the disk of radius `r`.
pub fn cdf_abs_y(x: f64, r: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= r {
        1.0
    } else {
        2.0 * (x * rho(x, r) + r * r * (x / r).asin()) / (PI * r * r)
    }
}

/// Area of the intersection of the room disk (radius `r`, centred at the
/// origin) with a disk of radius `x` centred at distance `d` from it, for
/// partially overlapping disks.
fn lens_area(r: f64, x: f64, d: f64) -> f64 {
    let k = ((-d + r + x) * (d + r - x) * (d - r + x) * (d + r + x)).max(0.0);
    let height = k.sqrt();
    let big = height.atan2(d * d + r * r - x * x);
    let small = height.atan2(d * d + x * x - r * r);
    r * r * big + x * x * small - 0.5 * height
}

/// Half of the area of `{dist(p, [-l, l] x {0}) <= x} ∩ disk(r)` on the
/// middle branch `r - l <= x <= sqrt(r^2 - l^2)`, so that the CDF of the
/// horizontal distance there is `2 theta / (pi r^2)`.
///
/// On this branch the rectangle `[-l, l] x [-x, x]` lies inside the room and
/// each end cap contributes the lens between the room and the cap's full
/// disk minus the inner half-disk.
pub fn theta(x: f64, r: f64, l: f64) -> Result<f64> {
    if !(l > 0.0 && l < r) {
        return Err(Error::Domain {
            func: "theta",
            value: l,
            domain: "0 < l < r",
        });
    }
    let lo = r - l;
    let hi = ((r - l) * (r + l)).sqrt();
    let slack = DOMAIN_TOL * r;
    if x < lo - slack || x > hi + slack {
        return Err(Error::Domain {
            func: "theta",
            value: x,
            domain: "r - l <= x <= sqrt(r^2 - l^2)",
        });
    }
    let x = x.clamp(lo, hi);
    Ok(lens_area(r, x, l) + 2.0 * x * l - 0.5 * PI * x * x)
}

/// CDF of the horizontal distance from a uniform device to the segment
/// `[-l, l]` on the x-axis.
///
/// Branches are half-open: `[0, r-l)`, `[r-l, sqrt(r^2-l^2))` and
/// `[sqrt(r^2-l^2), r]`.
pub fn cdf_horizontal_distance(x: f64, r: f64, l: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= r {
        return 1.0;
    }
    let area = PI * r * r;
    let knee = ((r - l) * (r + l)).max(0.0).sqrt();
    if x < r - l {
        (4.0 * x * l + PI * x * x) / area
    } else if x < knee {
        // Inside the validated domain by construction.
        match theta(x, r, l) {
            Ok(t) => 2.0 * t / area,
            Err(_) => cdf_abs_y(x, r),
        }
    } else {
        cdf_abs_y(x, r)
    }
}

/// Closest admissible antenna position to a device at abscissa `x_u`.
pub fn clamp_pa_position(x_u: f64, l: f64) -> PaPosition {
    PaPosition {
        x_p: x_u.clamp(-l, l),
    }
}

/// Horizontal distance from the device to its pinching antenna.
pub fn horizontal_distance(pos: DevicePosition, l: f64) -> f64 {
    let dx = pos.x - clamp_pa_position(pos.x, l).x_p;
    dx.hypot(pos.y)
}

/// Uniform draw on the disk of radius `r` by polar inversion.
pub fn sample_uniform_disk<R: Rng + ?Sized>(rng: &mut R, r: f64) -> DevicePosition {
    let u: f64 = rng.gen();
    let v: f64 = rng.gen();
    let radius = r * u.sqrt();
    let (s, c) = (2.0 * PI * v).sin_cos();
    DevicePosition {
        x: radius * c,
        y: radius * s,
    }
}
