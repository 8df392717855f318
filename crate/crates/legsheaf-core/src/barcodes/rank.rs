use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::{Bar, Barcode};
use crate::exactalg::Dims;
use crate::q::{mid, qi, Ext, Q};

/// Finite presentation of a persistence module sampled once per gap
/// between consecutive critical values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankInvariant {
    pub critical: Vec<Q>,
    pub samples: Vec<Q>,
    /// Graded dimension at each sample.
    pub stalk_dims: Vec<Dims>,
    /// Ranks between adjacent samples `i -> i + 1`.
    pub structure_ranks: Vec<Dims>,
    /// Ranks for every sample pair `i < j`.
    pub span_ranks: BTreeMap<(usize, usize), Dims>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankError {
    Shape,
    NotInterleaved,
    RankExceedsDimension { degree: i32, from: usize, to: usize },
    Missing { from: usize, to: usize },
    /// No interval module has these ranks.
    Inconsistent { degree: i32, from: usize, to: usize },
}

/// One sample per gap: `c_1 - 1`, midpoints, and `c_m + 1`.
pub fn sample_points(critical: &[Q]) -> Vec<Q> {
    if critical.is_empty() {
        return alloc::vec![qi(0)];
    }
    let mut s = Vec::with_capacity(critical.len() + 1);
    s.push(&critical[0] - qi(1));
    for w in critical.windows(2) {
        s.push(mid(&w[0], &w[1]));
    }
    s.push(critical.last().unwrap() + qi(1));
    s
}

fn get(d: &Dims, k: i32) -> usize {
    *d.get(&k).unwrap_or(&0)
}

impl RankInvariant {
    pub fn validate(&self) -> Result<(), RankError> {
        let m = self.critical.len();
        if self.samples.len() != m + 1 || self.stalk_dims.len() != m + 1 || self.structure_ranks.len() != m {
            return Err(RankError::Shape);
        }
        for (i, s) in self.samples.iter().enumerate() {
            if i > 0 && *s <= self.critical[i - 1] {
                return Err(RankError::NotInterleaved);
            }
            if i < m && *s >= self.critical[i] {
                return Err(RankError::NotInterleaved);
            }
        }
        for i in 0..m {
            for (&d, &r) in &self.structure_ranks[i] {
                if r > get(&self.stalk_dims[i], d).min(get(&self.stalk_dims[i + 1], d)) {
                    return Err(RankError::RankExceedsDimension { degree: d, from: i, to: i + 1 });
                }
            }
        }
        Ok(())
    }

    /// Rank from sample `i` to sample `j >= i` in one degree.
    pub fn rank(&self, degree: i32, i: usize, j: usize) -> Result<usize, RankError> {
        if i == j {
            return Ok(get(&self.stalk_dims[i], degree));
        }
        if let Some(d) = self.span_ranks.get(&(i, j)) {
            return Ok(get(d, degree));
        }
        // a rank is bounded by every adjacent rank along the way
        let bound = (i..j).map(|k| get(&self.structure_ranks[k], degree)).min().unwrap_or(0);
        if j == i + 1 || bound == 0 {
            return Ok(bound);
        }
        Err(RankError::Missing { from: i, to: j })
    }

    fn degrees(&self) -> BTreeSet<i32> {
        self.stalk_dims.iter().flat_map(|d| d.keys().copied()).collect()
    }
}

/// Rank invariant of a barcode sampled at its own endpoints.
pub fn rank_invariant_of(b: &Barcode) -> RankInvariant {
    let critical = b.endpoints();
    let samples = sample_points(&critical);
    let stalk_dims: Vec<Dims> = samples.iter().map(|s| b.dims_at(s)).collect();
    let structure_ranks = samples.windows(2).map(|w| b.structure_rank(&w[0], &w[1])).collect();
    let mut span_ranks = BTreeMap::new();
    for i in 0..samples.len() {
        for j in i + 1..samples.len() {
            span_ranks.insert((i, j), b.structure_rank(&samples[i], &samples[j]));
        }
    }
    RankInvariant { critical, samples, stalk_dims, structure_ranks, span_ranks }
}

/// Inclusion–exclusion on the rank function. Samples `i..=j` span the bar
/// `(c_i, c_{j+1}]` where `c_0 = -inf` and `c_{m+1} = +inf`.
pub fn barcode_from_rank_invariant(ri: &RankInvariant) -> Result<Barcode, RankError> {
    ri.validate()?;
    let n = ri.samples.len();
    let mut bars = Vec::new();
    for d in ri.degrees() {
        let r = |i: isize, j: isize| -> Result<i64, RankError> {
            if i < 0 || j >= n as isize {
                return Ok(0);
            }
            Ok(ri.rank(d, i as usize, j as usize)? as i64)
        };
        for i in 0..n as isize {
            for j in i..n as isize {
                let k = r(i, j)? - r(i - 1, j)? - r(i, j + 1)? + r(i - 1, j + 1)?;
                if k < 0 {
                    return Err(RankError::Inconsistent { degree: d, from: i as usize, to: j as usize });
                }
                if k > 0 {
                    let start = if i == 0 { Ext::NegInf } else { Ext::Fin(ri.critical[i as usize - 1].clone()) };
                    let end = if j as usize == n - 1 { Ext::PosInf } else { Ext::Fin(ri.critical[j as usize].clone()) };
                    bars.push(Bar { degree: d, start, end, mult: k as usize });
                }
            }
        }
    }
    Ok(Barcode::new(bars))
}
