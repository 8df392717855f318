use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{Field, Matrix};

/// Column-sparse matrix; each column holds `(row, value)` pairs sorted by row.
#[derive(Clone, Debug, PartialEq)]
pub struct Sparse<K: Field> {
    field: K,
    rows: usize,
    cols: Vec<Vec<(usize, K::Elem)>>,
}

impl<K: Field> Sparse<K> {
    pub fn zeros(field: &K, rows: usize, cols: usize) -> Self {
        Sparse { field: field.clone(), rows, cols: vec![Vec::new(); cols] }
    }

    /// Builds from `(row, col, value)` triplets, summing repeats.
    pub fn from_triplets(field: &K, rows: usize, cols: usize, trips: Vec<(usize, usize, K::Elem)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, K::Elem>> = vec![BTreeMap::new(); cols];
        for (r, c, v) in trips {
            assert!(r < rows && c < cols, "triplet out of range");
            if field.is_zero(&v) {
                continue;
            }
            let e = acc[c].entry(r).or_insert_with(|| field.zero());
            *e = field.add(e, &v);
        }
        let cols = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !field.is_zero(v)).collect())
            .collect();
        Sparse { field: field.clone(), rows, cols }
    }

    pub fn from_dense(m: &Matrix<K>) -> Self {
        let f = m.field();
        let cols = (0..m.cols())
            .map(|j| (0..m.rows()).filter(|&i| !f.is_zero(m.get(i, j))).map(|i| (i, m.get(i, j).clone())).collect())
            .collect();
        Sparse { field: f.clone(), rows: m.rows(), cols }
    }

    pub fn to_dense(&self) -> Matrix<K> {
        let mut m = Matrix::zeros(&self.field, self.rows, self.cols.len());
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> &K {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn ncols(&self) -> usize {
        self.cols.len()
    }
    pub fn col(&self, j: usize) -> &[(usize, K::Elem)] {
        &self.cols[j]
    }
    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }
    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &Sparse<K>) -> Sparse<K> {
        assert_eq!(self.field, rhs.field, "mixed fields");
        assert_eq!(self.cols.len(), rhs.rows, "dimension mismatch in product");
        let f = &self.field;
        let cols = rhs
            .cols
            .iter()
            .map(|rc| {
                let mut acc: BTreeMap<usize, K::Elem> = BTreeMap::new();
                for (k, b) in rc {
                    for (i, a) in &self.cols[*k] {
                        let e = acc.entry(*i).or_insert_with(|| f.zero());
                        *e = f.add(e, &f.mul(a, b));
                    }
                }
                acc.into_iter().filter(|(_, v)| !f.is_zero(v)).collect()
            })
            .collect();
        Sparse { field: f.clone(), rows: self.rows, cols }
    }

    pub fn rank(&self) -> usize {
        reduce(&self.field, self.cols.clone()).0
    }

    /// Places each piece with its top-left corner at the given offsets.
    pub fn assemble(field: &K, rows: usize, cols: usize, pieces: &[(usize, usize, &Sparse<K>)]) -> Sparse<K> {
        let mut out: Vec<Vec<(usize, K::Elem)>> = vec![Vec::new(); cols];
        for (r0, c0, m) in pieces {
            for (j, col) in m.cols.iter().enumerate() {
                for (i, v) in col {
                    out[c0 + j].push((r0 + i, v.clone()));
                }
            }
        }
        let mut trips = Vec::new();
        for (j, col) in out.into_iter().enumerate() {
            for (i, v) in col {
                trips.push((i, j, v));
            }
        }
        Sparse::from_triplets(field, rows, cols, trips)
    }

    pub fn neg(&self) -> Sparse<K> {
        let f = &self.field;
        Sparse {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols.iter().map(|c| c.iter().map(|(i, v)| (*i, f.neg(v))).collect()).collect(),
        }
    }
}

/// Column reduction keyed by the lowest nonzero row. Returns the rank.
fn reduce<K: Field>(f: &K, mut cols: Vec<Vec<(usize, K::Elem)>>) -> (usize, Vec<Vec<(usize, K::Elem)>>) {
    let mut pivot_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut rank = 0;
    for j in 0..cols.len() {
        loop {
            let Some((low, lv)) = cols[j].last().cloned() else { break };
            let Some(&p) = pivot_of.get(&low) else {
                pivot_of.insert(low, j);
                rank += 1;
                break;
            };
            let pv = cols[p].last().expect("pivot column is nonzero").1.clone();
            let factor = f.mul(&lv, &f.inv(&pv));
            let merged = axpy(f, &cols[j], &factor, &cols[p]);
            cols[j] = merged;
        }
    }
    (rank, cols)
}

/// `a - factor * b` on sorted sparse vectors.
fn axpy<K: Field>(f: &K, a: &[(usize, K::Elem)], factor: &K::Elem, b: &[(usize, K::Elem)]) -> Vec<(usize, K::Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, f.neg(&f.mul(factor, &b[j].1))));
            j += 1;
        } else {
            let v = f.sub(&a[i].1, &f.mul(factor, &b[j].1));
            if !f.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
