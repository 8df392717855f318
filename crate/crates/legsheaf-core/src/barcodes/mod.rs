//! Graded barcodes of constructible sheaves on the line.
//!
//! A bar `(a, b]` in degree `d` stands for the interval sheaf supported on
//! the half-open interval, closed on the right, placed in degree `d`.

mod interleave;
mod rank;
mod tsv;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::exactalg::Dims;
use crate::q::{Ext, Q};

pub use interleave::{interleaving_check, interleaving_check_detailed, interleaving_distance, Method, Verdict};
pub use rank::{barcode_from_rank_invariant, rank_invariant_of, sample_points, RankInvariant, RankError};
pub use tsv::{parse_tsv, to_svg, to_tsv, TsvError};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bar {
    pub degree: i32,
    pub start: Ext,
    pub end: Ext,
    pub mult: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BarError {
    EmptyInterval,
    ZeroMultiplicity,
}

impl Bar {
    pub fn new(degree: i32, start: Ext, end: Ext, mult: usize) -> Result<Bar, BarError> {
        if mult == 0 {
            return Err(BarError::ZeroMultiplicity);
        }
        if start >= end || start == Ext::PosInf || end == Ext::NegInf {
            return Err(BarError::EmptyInterval);
        }
        Ok(Bar { degree, start, end, mult })
    }

    /// Finite bar with multiplicity one.
    pub fn finite(degree: i32, start: Q, end: Q) -> Bar {
        Bar::new(degree, Ext::Fin(start), Ext::Fin(end), 1).expect("start < end")
    }

    /// `start < u <= end`.
    pub fn contains(&self, u: &Q) -> bool {
        self.start < *u && self.end >= *u
    }

    /// `end - start`, or `None` when infinite.
    pub fn length(&self) -> Option<Q> {
        match (&self.start, &self.end) {
            (Ext::Fin(a), Ext::Fin(b)) => Some(b - a),
            _ => None,
        }
    }
}

/// Finite multiset of bars in canonical order `(degree, start, end)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Barcode {
    bars: Vec<Bar>,
}

impl Barcode {
    pub fn empty() -> Barcode {
        Barcode::default()
    }

    /// Merges equal intervals and sorts.
    pub fn new(bars: impl IntoIterator<Item = Bar>) -> Barcode {
        let mut m: BTreeMap<(i32, Ext, Ext), usize> = BTreeMap::new();
        for b in bars {
            *m.entry((b.degree, b.start, b.end)).or_insert(0) += b.mult;
        }
        let bars = m
            .into_iter()
            .filter(|(_, k)| *k > 0)
            .map(|((degree, start, end), mult)| Bar { degree, start, end, mult })
            .collect();
        Barcode { bars }
    }

    pub fn bars(&self) -> &[Bar] {
        &self.bars
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bars.iter().map(|b| b.mult).sum()
    }

    pub fn degrees(&self) -> Vec<i32> {
        let mut v: Vec<i32> = self.bars.iter().map(|b| b.degree).collect();
        v.dedup();
        v
    }

    /// Bars of one degree, repeated according to multiplicity.
    pub fn intervals(&self, degree: i32) -> Vec<(Ext, Ext)> {
        let mut v = Vec::new();
        for b in self.bars.iter().filter(|b| b.degree == degree) {
            for _ in 0..b.mult {
                v.push((b.start.clone(), b.end.clone()));
            }
        }
        v
    }

    /// Sorted distinct finite endpoints.
    pub fn endpoints(&self) -> Vec<Q> {
        let mut v: Vec<Q> = self
            .bars
            .iter()
            .flat_map(|b| [b.start.fin().cloned(), b.end.fin().cloned()])
            .flatten()
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn dimension(&self, degree: i32, u: &Q) -> usize {
        dimension_function(self, degree, u)
    }

    /// Graded dimension at `u`.
    pub fn dims_at(&self, u: &Q) -> Dims {
        let mut d = Dims::new();
        for b in self.bars.iter().filter(|b| b.contains(u)) {
            *d.entry(b.degree).or_insert(0) += b.mult;
        }
        d
    }

    /// Rank of the structure map from `u` to `v >= u`.
    pub fn structure_rank(&self, u: &Q, v: &Q) -> Dims {
        let mut d = Dims::new();
        for b in self.bars.iter().filter(|b| b.contains(u) && b.contains(v)) {
            *d.entry(b.degree).or_insert(0) += b.mult;
        }
        d
    }

    pub fn shift(&self, c: &Q) -> Barcode {
        shift(self, c)
    }
}

/// Sum of multiplicities of degree-`d` bars with `start < u <= end`.
pub fn dimension_function(b: &Barcode, d: i32, u: &Q) -> usize {
    b.bars.iter().filter(|x| x.degree == d && x.contains(u)).map(|x| x.mult).sum()
}

/// Moves every endpoint by `-c`.
pub fn shift(b: &Barcode, c: &Q) -> Barcode {
    Barcode::new(b.bars.iter().map(|x| Bar { start: x.start.sub(c), end: x.end.sub(c), ..x.clone() }))
}
