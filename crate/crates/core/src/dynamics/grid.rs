use alloc::string::String;
use alloc::vec::Vec;

use crate::pathsynth::PulseSchedule;
use crate::qcore::QuantumState;
use crate::{Error, Result};

const MAX_BREAKS: usize = 4;

/// Uniform grid of `steps` intervals on `[t0, t1]`, optionally with
/// instants where the drive is discontinuous. Steps containing such an
/// instant are split there and the drive is sampled one-sided.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeGrid {
    pub t0: f64,
    pub t1: f64,
    pub steps: usize,
    breaks: [f64; MAX_BREAKS],
    n_breaks: usize,
}

/// Sub-interval of one grid step. `open_*` marks ends lying on a break.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Piece {
    pub a: f64,
    pub b: f64,
    pub open_a: bool,
    pub open_b: bool,
}

impl Piece {
    pub fn len(&self) -> f64 {
        self.b - self.a
    }

    /// `t` moved just inside the piece when it sits on an open end.
    pub fn sample(&self, t: f64) -> f64 {
        let e = 1e-4 * self.len();
        if self.open_a && t <= self.a + e {
            self.a + e
        } else if self.open_b && t >= self.b - e {
            self.b - e
        } else {
            t
        }
    }
}

impl TimeGrid {
    pub fn new(t0: f64, t1: f64, steps: usize) -> Result<Self> {
        if steps == 0 {
            return Err(Error::param("steps", "must be positive"));
        }
        if !(t1 >= t0) || !t0.is_finite() || !t1.is_finite() {
            return Err(Error::param("t1", alloc::format!("[{t0}, {t1}] is not an interval")));
        }
        Ok(TimeGrid { t0, t1, steps, breaks: [0.0; MAX_BREAKS], n_breaks: 0 })
    }

    /// `[0, τ]` with the schedule's corners as breaks.
    pub fn over(schedule: &PulseSchedule, steps: usize) -> Result<Self> {
        TimeGrid::new(0.0, schedule.tau, steps)?.with_breaks(&[schedule.tau1, schedule.tau2])
    }

    /// Adds discontinuity instants; ones outside `(t0, t1)` are ignored.
    pub fn with_breaks(mut self, breaks: &[f64]) -> Result<Self> {
        for &b in breaks {
            if !b.is_finite() {
                return Err(Error::param("breaks", "must be finite"));
            }
            if b <= self.t0 || b >= self.t1 || self.breaks().contains(&b) {
                continue;
            }
            if self.n_breaks == MAX_BREAKS {
                return Err(Error::param("breaks", alloc::format!("at most {MAX_BREAKS} supported")));
            }
            self.breaks[self.n_breaks] = b;
            self.n_breaks += 1;
        }
        self.breaks[..self.n_breaks].sort_by(f64::total_cmp);
        Ok(self)
    }

    pub fn breaks(&self) -> &[f64] {
        &self.breaks[..self.n_breaks]
    }

    /// Pieces of step `k`: one, unless a break falls inside. Breaks within
    /// `1e-4·dt` of a node are snapped to it.
    pub fn pieces(&self, k: usize) -> impl Iterator<Item = Piece> + '_ {
        let (a, b) = (self.time(k), self.time(k + 1));
        let tol = 1e-4 * (b - a);
        let on = move |t: f64| self.breaks().iter().any(|&x| (x - t).abs() <= tol);
        let mut cuts = [0.0; MAX_BREAKS + 2];
        cuts[0] = a;
        let mut n = 1;
        for &x in self.breaks() {
            if x > a + tol && x < b - tol {
                cuts[n] = x;
                n += 1;
            }
        }
        cuts[n] = b;
        (0..n).map(move |i| Piece { a: cuts[i], b: cuts[i + 1], open_a: i > 0 || on(a), open_b: i + 1 < n || on(b) })
    }

    pub fn dt(&self) -> f64 {
        (self.t1 - self.t0) / self.steps as f64
    }

    pub fn time(&self, k: usize) -> f64 {
        if k == self.steps {
            self.t1
        } else {
            self.t0 + k as f64 * self.dt()
        }
    }

    pub fn midpoint(&self, k: usize) -> f64 {
        self.t0 + (k as f64 + 0.5) * self.dt()
    }

    pub fn refined(&self, factor: usize) -> TimeGrid {
        TimeGrid { steps: self.steps * factor.max(1), ..*self }
    }
}

/// Sampled evolution.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<QuantumState>,
    pub description: String,
}

impl Trajectory {
    pub fn final_state(&self) -> &QuantumState {
        self.states.last().expect("trajectories hold at least the initial state")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pieces_split_at_breaks() {
        let g = TimeGrid::new(0.0, 1.0, 4).unwrap().with_breaks(&[0.3, 0.5, 2.0]).unwrap();
        assert_eq!(g.breaks(), &[0.3, 0.5]);
        let p: Vec<Piece> = g.pieces(1).collect();
        assert_eq!(p.len(), 2);
        assert_eq!((p[0].a, p[0].b, p[0].open_a, p[0].open_b), (0.25, 0.3, false, true));
        assert_eq!((p[1].a, p[1].b, p[1].open_a, p[1].open_b), (0.3, 0.5, true, true));
        let q: Vec<Piece> = g.pieces(2).collect();
        assert_eq!(q.len(), 1);
        assert!(q[0].open_a && !q[0].open_b);
        assert!(q[0].sample(0.5) > 0.5);
        assert_eq!(q[0].sample(0.6), 0.6);
        assert_eq!(g.pieces(0).count(), 1);
    }

    #[test]
    fn refined_keeps_breaks() {
        let g = TimeGrid::new(0.0, 1.0, 3).unwrap().with_breaks(&[0.5]).unwrap().refined(2);
        assert_eq!(g.breaks(), &[0.5]);
        assert!(TimeGrid::new(0.0, 1.0, 3).unwrap().with_breaks(&[f64::NAN]).is_err());
    }
}
