use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::q::Q;

/// A piecewise-linear function on a closed interval, given by breakpoints
/// with strictly increasing `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sheet {
    pub breakpoints: Vec<(Q, Q)>,
}

impl Sheet {
    pub fn new(breakpoints: Vec<(Q, Q)>) -> Sheet {
        Sheet { breakpoints }
    }

    pub fn x_start(&self) -> &Q {
        &self.breakpoints[0].0
    }

    pub fn x_end(&self) -> &Q {
        &self.breakpoints.last().unwrap().0
    }

    pub fn start(&self) -> &(Q, Q) {
        &self.breakpoints[0]
    }

    pub fn end(&self) -> &(Q, Q) {
        self.breakpoints.last().unwrap()
    }

    pub fn covers(&self, x: &Q) -> bool {
        self.x_start() <= x && x <= self.x_end()
    }

    /// `x` strictly inside the domain.
    pub fn spans(&self, x: &Q) -> bool {
        self.x_start() < x && x < self.x_end()
    }

    fn segment(&self, k: usize) -> (&(Q, Q), &(Q, Q)) {
        (&self.breakpoints[k], &self.breakpoints[k + 1])
    }

    fn seg_slope(&self, k: usize) -> Q {
        let (a, b) = self.segment(k);
        (&b.1 - &a.1) / (&b.0 - &a.0)
    }

    pub fn value(&self, x: &Q) -> Option<Q> {
        if !self.covers(x) {
            return None;
        }
        for k in 0..self.breakpoints.len() - 1 {
            let (a, b) = self.segment(k);
            if x <= &b.0 {
                return Some(&a.1 + (x - &a.0) * self.seg_slope(k));
            }
        }
        Some(self.end().1.clone())
    }

    /// Slope just left of `x`; `None` at or before the start.
    pub fn slope_left(&self, x: &Q) -> Option<Q> {
        if x <= self.x_start() || x > self.x_end() {
            return None;
        }
        (0..self.breakpoints.len() - 1).find(|&k| x <= &self.breakpoints[k + 1].0).map(|k| self.seg_slope(k))
    }

    /// Slope just right of `x`; `None` at or after the end.
    pub fn slope_right(&self, x: &Q) -> Option<Q> {
        if x < self.x_start() || x >= self.x_end() {
            return None;
        }
        (0..self.breakpoints.len() - 1).find(|&k| x < &self.breakpoints[k + 1].0).map(|k| self.seg_slope(k))
    }

    pub fn xs(&self) -> impl Iterator<Item = &Q> {
        self.breakpoints.iter().map(|p| &p.0)
    }

    pub fn translated(&self, u: &Q) -> Sheet {
        Sheet { breakpoints: self.breakpoints.iter().map(|(x, t)| (x.clone(), t + u)).collect() }
    }

    pub fn negated(&self) -> Sheet {
        Sheet { breakpoints: self.breakpoints.iter().map(|(x, t)| (x.clone(), -t)).collect() }
    }
}

/// A maximal interval of the common domain of two sheets on which both are linear.
#[derive(Clone, Debug)]
pub struct Piece {
    pub x0: Q,
    pub x1: Q,
    /// `a - b` at `x0` and `x1`.
    pub d0: Q,
    pub d1: Q,
    pub slope_a: Q,
    pub slope_b: Q,
}

impl Piece {
    pub fn slope_diff(&self) -> Q {
        &self.slope_a - &self.slope_b
    }

    /// Interior zero of `a - b`, if the difference changes sign strictly inside.
    pub fn crossing(&self) -> Option<Q> {
        if (self.d0.is_positive() && self.d1.is_negative()) || (self.d0.is_negative() && self.d1.is_positive()) {
            Some(&self.x0 + (&self.x1 - &self.x0) * &self.d0 / (&self.d0 - &self.d1))
        } else {
            None
        }
    }
}

/// Common domain of two sheets split at every breakpoint of either.
pub fn pieces(a: &Sheet, b: &Sheet) -> Vec<Piece> {
    let lo = a.x_start().max(b.x_start()).clone();
    let hi = a.x_end().min(b.x_end()).clone();
    if lo >= hi {
        return Vec::new();
    }
    let mut xs: Vec<Q> = a.xs().chain(b.xs()).filter(|x| **x > lo && **x < hi).cloned().collect();
    xs.push(lo);
    xs.push(hi);
    xs.sort();
    xs.dedup();
    let diff = |x: &Q| a.value(x).unwrap() - b.value(x).unwrap();
    xs.windows(2)
        .map(|w| Piece {
            x0: w[0].clone(),
            x1: w[1].clone(),
            d0: diff(&w[0]),
            d1: diff(&w[1]),
            slope_a: a.slope_right(&w[0]).unwrap(),
            slope_b: b.slope_right(&w[0]).unwrap(),
        })
        .collect()
}

pub fn sign(x: &Q) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
