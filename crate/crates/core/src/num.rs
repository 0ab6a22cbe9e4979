//! Small numeric helpers shared across modules.

use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

/// Pairwise (cascade) summation. The reduction tree depends only on the
/// length of the slice, so results are bit-stable.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const BLOCK: usize = 8;
    if xs.len() <= BLOCK {
        let mut s = 0.0;
        for &x in xs {
            s += x;
        }
        return s;
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

pub fn pairwise_mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    pairwise_sum(xs) / xs.len() as f64
}

/// `n` evenly spaced points on `[a, b]`, both ends included.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![a],
        _ => (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect(),
    }
}

/// Uniform angles `2πk/n`, `k = 0..n` (0 included, 2π excluded).
pub fn periodic_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| 2.0 * PI * k as f64 / n as f64).collect()
}

/// Distance between two angles modulo 2π, in `[0, π]`.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = wrap_positive(a - b);
    d.min(2.0 * PI - d)
}

/// Reduce an angle to `[0, 2π)`.
pub fn wrap_positive(x: f64) -> f64 {
    let t = 2.0 * PI;
    let r = x - t * (x / t).floor();
    if r >= t {
        0.0
    } else {
        r
    }
}

pub fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_naive_on_integers() {
        let xs: Vec<f64> = (1..=1000).map(|k| k as f64).collect();
        assert_eq!(pairwise_sum(&xs), 500500.0);
    }

    #[test]
    fn angle_distance_wraps() {
        assert!(angle_distance(0.1, 2.0 * PI - 0.1) < 0.2 + 1e-15);
        assert!((angle_distance(0.0, PI) - PI).abs() < 1e-15);
    }

    #[test]
    fn linspace_endpoints() {
        let v = linspace(-1.0, 1.0, 21);
        assert_eq!(v[0], -1.0);
        assert_eq!(v[20], 1.0);
        assert!(v[10].abs() < 1e-15);
    }
}
