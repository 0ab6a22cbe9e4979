//! Bessel functions of the first kind for integer order.

use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

/// Location of the first maximum of `J₁`.
pub const J1_ARGMAX: f64 = 1.841_183_781_340_659;

/// `J_n(x)` from the periodic trapezoid rule on Bessel's integral
/// `(1/2π)∫₀^{2π} cos(nτ − x sin τ) dτ`, which converges geometrically.
pub fn bessel_j(n: i32, x: f64) -> f64 {
    let m = 64 + 2 * (n.unsigned_abs() as usize + x.abs().ceil() as usize);
    let h = 2.0 * PI / m as f64;
    let nf = n as f64;
    let mut s = 0.0;
    for k in 0..m {
        let tau = k as f64 * h;
        s += (nf * tau - x * tau.sin()).cos();
    }
    s / m as f64
}

pub fn j1(x: f64) -> f64 {
    bessel_j(1, x)
}

/// Inverse of `J₁` on its rising branch `[0, J1_ARGMAX]`.
pub fn j1_inverse(y: f64) -> Result<f64> {
    let ymax = j1(J1_ARGMAX);
    if !(0.0..=ymax).contains(&y) {
        return Err(Error::param("j1_inverse", alloc::format!("{y} outside [0, {ymax}]")));
    }
    let (mut lo, mut hi) = (0.0, J1_ARGMAX);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if j1(mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert!((bessel_j(0, 0.0) - 1.0).abs() < 1e-15);
        assert!(bessel_j(1, 0.0).abs() < 1e-15);
        assert!((j1(1.7) - 0.577_765_231_529_023_3).abs() < 1e-12);
        assert!((j1(2.0) - 0.576_724_807_756_873_6).abs() < 1e-12);
    }

    #[test]
    fn negative_order_parity() {
        for &x in &[0.3, 1.7, 4.2] {
            assert!((bessel_j(-1, x) + bessel_j(1, x)).abs() < 1e-14);
            assert!((bessel_j(-2, x) - bessel_j(2, x)).abs() < 1e-14);
        }
    }

    #[test]
    fn inverse_round_trip() {
        for &b in &[0.1, 0.9, 1.7] {
            assert!((j1_inverse(j1(b)).unwrap() - b).abs() < 1e-10);
        }
        assert!(j1_inverse(0.7).is_err());
    }
}
