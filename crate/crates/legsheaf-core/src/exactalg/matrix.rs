use alloc::vec;
use alloc::vec::Vec;

use super::Field;

/// Dense row-major matrix over a field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    data: Vec<K::Elem>,
}

impl<K: Field> Matrix<K> {
    pub fn zeros(field: &K, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &K, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(field: &K, rows: usize, cols: usize, entries: Vec<Vec<K::Elem>>) -> Option<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return None;
        }
        let data = entries.into_iter().flatten().collect();
        Some(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn from_i64(field: &K, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix { field: field.clone(), rows, cols, data: entries.iter().map(|&v| field.from_i64(v)).collect() }
    }

    pub fn field(&self) -> &K {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &K::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: K::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| self.field.is_zero(v))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        self.field.is_one(v)
                    } else {
                        self.field.is_zero(v)
                    }
                })
            })
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &Matrix<K>) -> Matrix<K> {
        assert_eq!(self.field, rhs.field, "mixed fields");
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix<K>) -> Matrix<K> {
        assert_eq!(self.field, rhs.field, "mixed fields");
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "dimension mismatch in sum");
        let f = &self.field;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f.add(a, b)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Matrix<K>) -> Matrix<K> {
        self.add(&rhs.scale(&self.field.neg(&self.field.one())))
    }

    pub fn scale(&self, s: &K::Elem) -> Matrix<K> {
        let f = &self.field;
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| f.mul(a, s)).collect() }
    }

    pub fn neg(&self) -> Matrix<K> {
        self.scale(&self.field.neg(&self.field.one()))
    }

    pub fn transpose(&self) -> Matrix<K> {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product.
    pub fn kron(&self, rhs: &Matrix<K>) -> Matrix<K> {
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if f.is_zero(a) {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out.set(i * rhs.rows + k, j * rhs.cols + l, f.mul(a, rhs.get(k, l)));
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, rhs: &Matrix<K>) -> Matrix<K> {
        let mut out = Matrix::zeros(&self.field, self.rows + rhs.rows, self.cols + rhs.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, self.cols, rhs);
        out
    }

    /// Writes `block` with its top-left corner at `(r, c)`.
    pub fn paste(&mut self, r: usize, c: usize, block: &Matrix<K>) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r + i, c + j, block.get(i, j).clone());
            }
        }
    }

    pub fn column(&self, j: usize) -> Vec<K::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn apply(&self, v: &[K::Elem]) -> Vec<K::Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !f.is_zero(a) && !f.is_zero(&v[j]) {
                        acc = f.add(&acc, &f.mul(a, &v[j]));
                    }
                }
                acc
            })
            .collect()
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let f = &self.field;
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| !f.is_zero(&m[r * cols + c])) else { continue };
            if p != rank {
                for j in 0..cols {
                    m.swap(p * cols + j, rank * cols + j);
                }
            }
            let inv = f.inv(&m[rank * cols + c]);
            for r in (rank + 1)..rows {
                let a = m[r * cols + c].clone();
                if f.is_zero(&a) {
                    continue;
                }
                let factor = f.mul(&a, &inv);
                for j in c..cols {
                    let sub = f.mul(&factor, &m[rank * cols + j]);
                    m[r * cols + j] = f.sub(&m[r * cols + j], &sub);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix<K>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let mut a = self.clone();
        let mut b = Matrix::identity(f, n);
        for c in 0..n {
            let p = (c..n).find(|&r| !f.is_zero(a.get(r, c)))?;
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                    b.data.swap(p * n + j, c * n + j);
                }
            }
            let inv = f.inv(a.get(c, c));
            for j in 0..n {
                let v = f.mul(a.get(c, j), &inv);
                a.set(c, j, v);
                let v = f.mul(b.get(c, j), &inv);
                b.set(c, j, v);
            }
            for r in 0..n {
                if r == c {
                    continue;
                }
                let factor = a.get(r, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in 0..n {
                    let v = f.sub(a.get(r, j), &f.mul(&factor, a.get(c, j)));
                    a.set(r, j, v);
                    let v = f.sub(b.get(r, j), &f.mul(&factor, b.get(c, j)));
                    b.set(r, j, v);
                }
            }
        }
        Some(b)
    }
}
