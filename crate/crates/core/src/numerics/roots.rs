//! Bracketed scalar root finding (Brent's method with a bisection guard).

use crate::error::{Error, Result};

const MAX_ITER: usize = 300;

/// Root of `f` on `[lo, hi]` with default tolerance `1e-12 (hi - lo)`.
pub fn find_root<F: FnMut(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<f64> {
    find_root_bracketed(f, lo, hi, 1e-12 * (hi - lo).abs())
}

/// Brent's method on a sign-changing bracket.
///
/// Terminates once the bracket is narrower than `tol` (or machine
/// precision); if interpolation stalls the remaining iterations bisect.
pub fn find_root_bracketed<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if lo.is_nan()
        || hi.is_nan()
        || lo >= hi
        || fa.is_nan()
        || fb.is_nan()
        || fa.signum() == fb.signum()
    {
        return Err(Error::InvalidBracket {
            lo,
            hi,
            flo: fa,
            fhi: fb,
        });
    }

    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // Inverse quadratic interpolation, or secant when only two points.
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
    }
    // Interpolation never met the tolerance; finish by plain bisection.
    let (mut lo, mut hi) = if b < c { (b, c) } else { (c, b) };
    let mut flo = f(lo);
    while hi - lo > tol.max(4.0 * f64::EPSILON * lo.abs().max(hi.abs())) {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
