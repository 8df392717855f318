use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use super::{Field, Matrix, Sparse};

/// Graded dimensions; only nonzero entries are stored.
pub type Dims = BTreeMap<i32, usize>;

/// Drops zero entries.
pub fn clean(d: Dims) -> Dims {
    d.into_iter().filter(|(_, v)| *v > 0).collect()
}

pub fn total(d: &Dims) -> usize {
    d.values().sum()
}

/// Euler characteristic of a graded dimension vector.
pub fn euler(d: &Dims) -> i64 {
    d.iter().map(|(k, v)| if k.rem_euclid(2) == 0 { *v as i64 } else { -(*v as i64) }).sum()
}

/// `d` shifted by `[n]`: degree `i` moves to `i - n`.
pub fn shift_dims(d: &Dims, n: i32) -> Dims {
    d.iter().map(|(k, v)| (k - n, *v)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexError {
    Shape(String),
    NotComplex(i32),
    NotChainMap(i32),
    Malformed(String),
}

/// Bounded cochain complex with sparse differentials `d^i : C^i -> C^{i+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseComplex<K: Field> {
    field: K,
    lo: i32,
    dims: Vec<usize>,
    diffs: Vec<Sparse<K>>,
}

impl<K: Field> SparseComplex<K> {
    pub fn zero(field: &K) -> Self {
        SparseComplex { field: field.clone(), lo: 0, dims: Vec::new(), diffs: Vec::new() }
    }

    /// `diffs[k]` is the differential out of degree `lo + k`; missing tail
    /// differentials are zero.
    pub fn new(field: &K, lo: i32, dims: Vec<usize>, mut diffs: Vec<Sparse<K>>) -> Result<Self, ComplexError> {
        while diffs.len() < dims.len().saturating_sub(1) {
            let k = diffs.len();
            diffs.push(Sparse::zeros(field, dims[k + 1], dims[k]));
        }
        if diffs.len() > dims.len().saturating_sub(1) {
            return Err(ComplexError::Shape(format!("{} differentials for {} terms", diffs.len(), dims.len())));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.field() != field {
                return Err(ComplexError::Shape(String::from("mixed fields")));
            }
            if d.ncols() != dims[k] || d.rows() != dims[k + 1] {
                return Err(ComplexError::Shape(format!("differential out of degree {} has wrong shape", lo + k as i32)));
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k].mul(&diffs[k - 1]).is_zero() {
                return Err(ComplexError::NotComplex(lo + k as i32 - 1));
            }
        }
        let (mut lo, mut dims) = (lo, dims);
        while dims.last() == Some(&0) {
            dims.pop();
            diffs.pop();
        }
        while dims.first() == Some(&0) {
            dims.remove(0);
            if !diffs.is_empty() {
                diffs.remove(0);
            }
            lo += 1;
        }
        if dims.is_empty() {
            return Ok(SparseComplex::zero(field));
        }
        Ok(SparseComplex { field: field.clone(), lo, dims, diffs })
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// One past the top degree.
    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32
    }

    pub fn dim(&self, i: i32) -> usize {
        if i < self.lo || i >= self.hi() {
            0
        } else {
            self.dims[(i - self.lo) as usize]
        }
    }

    pub fn dims(&self) -> Dims {
        clean((self.lo..self.hi()).map(|i| (i, self.dim(i))).collect())
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Differential out of degree `i`.
    pub fn d(&self, i: i32) -> Sparse<K> {
        if i >= self.lo && i + 1 < self.hi() {
            self.diffs[(i - self.lo) as usize].clone()
        } else {
            Sparse::zeros(&self.field, self.dim(i + 1), self.dim(i))
        }
    }

    fn d_ref(&self, i: i32) -> Option<&Sparse<K>> {
        if i >= self.lo && i + 1 < self.hi() {
            Some(&self.diffs[(i - self.lo) as usize])
        } else {
            None
        }
    }

    fn rank_d(&self, i: i32) -> usize {
        self.d_ref(i).map(|m| m.rank()).unwrap_or(0)
    }

    /// `dim H^i` for every degree with nonzero cohomology.
    pub fn cohomology(&self) -> Dims {
        let ranks: Vec<usize> = (self.lo..self.hi()).map(|i| self.rank_d(i)).collect();
        let mut out = Dims::new();
        for (k, &n) in self.dims.iter().enumerate() {
            let out_rank = ranks[k];
            let in_rank = if k > 0 { ranks[k - 1] } else { 0 };
            let h = n - out_rank - in_rank;
            if h > 0 {
                out.insert(self.lo + k as i32, h);
            }
        }
        out
    }

    pub fn to_dense(&self) -> Complex<K> {
        Complex { inner: self.clone() }
    }
}

/// Small complex with dense access; used for stalks.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex<K: Field> {
    inner: SparseComplex<K>,
}

impl<K: Field> Complex<K> {
    pub fn zero(field: &K) -> Self {
        Complex { inner: SparseComplex::zero(field) }
    }

    /// `k^dim` placed in degree `deg`.
    pub fn concentrated(field: &K, deg: i32, dim: usize) -> Self {
        Complex::from_dims(field, &[(deg, dim)].into_iter().collect())
    }

    /// Complex with the given terms and zero differentials.
    pub fn from_dims(field: &K, dims: &Dims) -> Self {
        let dims = clean(dims.clone());
        if dims.is_empty() {
            return Complex::zero(field);
        }
        let lo = *dims.keys().next().unwrap();
        let hi = *dims.keys().last().unwrap();
        let v = (lo..=hi).map(|i| *dims.get(&i).unwrap_or(&0)).collect();
        Complex { inner: SparseComplex::new(field, lo, v, Vec::new()).expect("zero differentials") }
    }

    /// `diffs[k]` is `d^{lo+k}` as a dense matrix.
    pub fn new(field: &K, lo: i32, dims: Vec<usize>, diffs: Vec<Matrix<K>>) -> Result<Self, ComplexError> {
        let sp = diffs.iter().map(Sparse::from_dense).collect();
        Ok(Complex { inner: SparseComplex::new(field, lo, dims, sp)? })
    }

    pub fn from_sparse(s: SparseComplex<K>) -> Self {
        Complex { inner: s }
    }

    pub fn as_sparse(&self) -> &SparseComplex<K> {
        &self.inner
    }

    pub fn field(&self) -> &K {
        &self.inner.field
    }
    pub fn lo(&self) -> i32 {
        self.inner.lo
    }
    pub fn hi(&self) -> i32 {
        self.inner.hi()
    }
    pub fn dim(&self, i: i32) -> usize {
        self.inner.dim(i)
    }
    pub fn dims(&self) -> Dims {
        self.inner.dims()
    }
    pub fn total_dim(&self) -> usize {
        self.inner.total_dim()
    }
    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }
    pub fn d(&self, i: i32) -> Matrix<K> {
        self.inner.d(i).to_dense()
    }
    pub fn cohomology(&self) -> Dims {
        self.inner.cohomology()
    }

    /// Degrees carrying nonzero terms, as a half-open range.
    pub fn support(&self) -> core::ops::Range<i32> {
        let d = self.dims();
        match (d.keys().next(), d.keys().last()) {
            (Some(a), Some(b)) => *a..*b + 1,
            _ => 0..0,
        }
    }

    /// `C[n]`: `C[n]^i = C^{i+n}`, differential multiplied by `(-1)^n`.
    pub fn shift(&self, n: i32) -> Complex<K> {
        let f = self.field();
        let r = self.support();
        if r.is_empty() {
            return Complex::zero(f);
        }
        let dims = r.clone().map(|i| self.dim(i)).collect();
        let sign = f.sign(n.rem_euclid(2) == 1);
        let diffs = r.clone().take(r.len() - 1).map(|i| self.d(i).scale(&sign)).collect();
        Complex::new(f, r.start - n, dims, diffs).expect("shift of a complex")
    }

    /// Tensor product with Koszul signs, `d(a⊗b) = da⊗b + (-1)^|a| a⊗db`.
    pub fn tensor(&self, other: &Complex<K>) -> Complex<K> {
        let f = self.field();
        let (ra, rb) = (self.support(), other.support());
        if ra.is_empty() || rb.is_empty() {
            return Complex::zero(f);
        }
        let lo = ra.start + rb.start;
        let hi = ra.end + rb.end - 1;
        let layout = |n: i32| -> Vec<(i32, usize)> {
            let mut off = 0;
            let mut v = Vec::new();
            for i in ra.clone() {
                let j = n - i;
                let sz = self.dim(i) * other.dim(j);
                v.push((i, off));
                off += sz;
            }
            v
        };
        let dims: Vec<usize> = (lo..hi).map(|n| ra.clone().map(|i| self.dim(i) * other.dim(n - i)).sum()).collect();
        let mut diffs = Vec::new();
        for n in lo..hi - 1 {
            let src = layout(n);
            let tgt = layout(n + 1);
            let off_t: BTreeMap<i32, usize> = tgt.into_iter().collect();
            let mut m = Matrix::zeros(f, dims[(n + 1 - lo) as usize], dims[(n - lo) as usize]);
            for (i, so) in src {
                let j = n - i;
                let (da, db) = (self.dim(i), other.dim(j));
                if da * db == 0 {
                    continue;
                }
                if let Some(&to) = off_t.get(&(i + 1)) {
                    if self.dim(i + 1) > 0 {
                        let blk = self.d(i).kron(&Matrix::identity(f, db));
                        m.paste(to, so, &blk);
                    }
                }
                if let Some(&to) = off_t.get(&i) {
                    if other.dim(j + 1) > 0 {
                        let s = f.sign(i.rem_euclid(2) == 1);
                        let blk = Matrix::identity(f, da).kron(&other.d(j)).scale(&s);
                        m.paste(to, so, &blk);
                    }
                }
            }
            diffs.push(m);
        }
        Complex::new(f, lo, dims, diffs).expect("tensor of complexes")
    }
}

/// Degree-zero chain map with dense components.
#[derive(Clone, Debug)]
pub struct ChainMap<K: Field> {
    source: Complex<K>,
    target: Complex<K>,
    comps: BTreeMap<i32, Matrix<K>>,
}

/// Equality of the underlying maps; absent components count as zero.
impl<K: Field> PartialEq for ChainMap<K> {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.comps.keys().chain(other.comps.keys()).all(|&i| self.comp(i) == other.comp(i))
    }
}

impl<K: Field> ChainMap<K> {
    /// Checks shapes and `f d = d f`; missing components are zero.
    pub fn new(source: Complex<K>, target: Complex<K>, comps: BTreeMap<i32, Matrix<K>>) -> Result<Self, ComplexError> {
        let m = ChainMap::unchecked(source, target, comps)?;
        for i in m.degree_range() {
            let lhs = m.comp(i + 1).mul(&m.source.d(i));
            let rhs = m.target.d(i).mul(&m.comp(i));
            if lhs != rhs {
                return Err(ComplexError::NotChainMap(i));
            }
        }
        Ok(m)
    }

    /// Shape checks only.
    pub fn unchecked(source: Complex<K>, target: Complex<K>, comps: BTreeMap<i32, Matrix<K>>) -> Result<Self, ComplexError> {
        for (i, c) in &comps {
            if c.rows() != target.dim(*i) || c.cols() != source.dim(*i) {
                return Err(ComplexError::Shape(format!("component in degree {i} has wrong shape")));
            }
        }
        let comps = comps.into_iter().filter(|(_, c)| c.rows() * c.cols() > 0).collect();
        Ok(ChainMap { source, target, comps })
    }

    pub fn identity(c: &Complex<K>) -> Self {
        let comps = c.support().map(|i| (i, Matrix::identity(c.field(), c.dim(i)))).collect();
        ChainMap { source: c.clone(), target: c.clone(), comps }
    }

    pub fn zero(source: &Complex<K>, target: &Complex<K>) -> Self {
        ChainMap { source: source.clone(), target: target.clone(), comps: BTreeMap::new() }
    }

    pub fn source(&self) -> &Complex<K> {
        &self.source
    }
    pub fn target(&self) -> &Complex<K> {
        &self.target
    }
    pub fn field(&self) -> &K {
        self.source.field()
    }

    fn degree_range(&self) -> core::ops::Range<i32> {
        let (a, b) = (self.source.support(), self.target.support());
        if a.is_empty() {
            return b;
        }
        if b.is_empty() {
            return a;
        }
        a.start.min(b.start) - 1..a.end.max(b.end)
    }

    pub fn comp(&self, i: i32) -> Matrix<K> {
        self.comps
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field(), self.target.dim(i), self.source.dim(i)))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainMap<K>) -> ChainMap<K> {
        assert_eq!(self.target.dims(), other.source.dims(), "composition of incompatible maps");
        let comps = self.comps.keys().map(|&i| (i, other.comp(i).mul(&self.comp(i)))).collect();
        ChainMap { source: self.source.clone(), target: other.target.clone(), comps }
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.source.support().all(|i| self.comp(i).is_identity())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(|m| m.is_zero())
    }

    pub fn is_iso(&self) -> bool {
        self.source.dims() == self.target.dims() && self.source.support().all(|i| self.comp(i).rank() == self.source.dim(i))
    }

    pub fn scale(&self, s: &K::Elem) -> ChainMap<K> {
        let comps = self.comps.iter().map(|(i, m)| (*i, m.scale(s))).collect();
        ChainMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn add(&self, other: &ChainMap<K>) -> ChainMap<K> {
        let mut comps = BTreeMap::new();
        for i in self.degree_range() {
            comps.insert(i, self.comp(i).add(&other.comp(i)));
        }
        ChainMap::unchecked(self.source.clone(), self.target.clone(), comps).expect("sum of maps")
    }

    /// `f ⊗ g` on tensor complexes, matching the layout of [`Complex::tensor`].
    pub fn tensor(&self, other: &ChainMap<K>) -> ChainMap<K> {
        let f = self.field();
        let src = self.source.tensor(&other.source);
        let tgt = self.target.tensor(&other.target);
        let mut comps = BTreeMap::new();
        for n in src.support() {
            let mut m = Matrix::zeros(f, tgt.dim(n), src.dim(n));
            let (mut so, mut to) = (0, 0);
            let sa = self.source.support();
            let ta = self.target.support();
            // offsets within degree n are ordered by the left factor's degree
            let mut src_off = BTreeMap::new();
            for i in sa.clone() {
                src_off.insert(i, so);
                so += self.source.dim(i) * other.source.dim(n - i);
            }
            let mut tgt_off = BTreeMap::new();
            for i in ta.clone() {
                tgt_off.insert(i, to);
                to += self.target.dim(i) * other.target.dim(n - i);
            }
            for (i, o) in &src_off {
                if let Some(t) = tgt_off.get(i) {
                    let blk = self.comp(*i).kron(&other.comp(n - i));
                    if blk.rows() * blk.cols() > 0 {
                        m.paste(*t, *o, &blk);
                    }
                }
            }
            comps.insert(n, m);
        }
        ChainMap::unchecked(src, tgt, comps).expect("tensor of maps")
    }

    pub fn to_sparse(&self) -> SparseChainMap<K> {
        let comps = self.comps.iter().map(|(i, m)| (*i, Sparse::from_dense(m))).collect();
        SparseChainMap { source: self.source.inner.clone(), target: self.target.inner.clone(), comps }
    }

    /// Ranks of the induced maps on cohomology.
    pub fn cohomology_ranks(&self) -> Dims {
        self.to_sparse().cohomology_ranks()
    }

    pub fn cone(&self) -> Complex<K> {
        Complex::from_sparse(self.to_sparse().cone())
    }
}

/// Degree-zero chain map between sparse complexes.
#[derive(Clone, Debug)]
pub struct SparseChainMap<K: Field> {
    source: SparseComplex<K>,
    target: SparseComplex<K>,
    comps: BTreeMap<i32, Sparse<K>>,
}

impl<K: Field> SparseChainMap<K> {
    pub fn new(source: SparseComplex<K>, target: SparseComplex<K>, comps: BTreeMap<i32, Sparse<K>>) -> Result<Self, ComplexError> {
        for (i, c) in &comps {
            if c.rows() != target.dim(*i) || c.ncols() != source.dim(*i) {
                return Err(ComplexError::Shape(format!("component in degree {i} has wrong shape")));
            }
        }
        let m = SparseChainMap { source, target, comps };
        let lo = m.source.lo().min(m.target.lo()) - 1;
        let hi = m.source.hi().max(m.target.hi());
        for i in lo..hi {
            let lhs = m.comp(i + 1).mul(&m.source.d(i));
            let rhs = m.target.d(i).mul(&m.comp(i));
            if lhs != rhs {
                return Err(ComplexError::NotChainMap(i));
            }
        }
        Ok(m)
    }

    pub fn source(&self) -> &SparseComplex<K> {
        &self.source
    }
    pub fn target(&self) -> &SparseComplex<K> {
        &self.target
    }

    pub fn comp(&self, i: i32) -> Sparse<K> {
        self.comps
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Sparse::zeros(self.source.field(), self.target.dim(i), self.source.dim(i)))
    }

    pub fn to_dense(&self) -> ChainMap<K> {
        let comps = self.comps.iter().map(|(i, m)| (*i, m.to_dense())).collect();
        ChainMap::unchecked(self.source.to_dense(), self.target.to_dense(), comps).expect("shapes were checked")
    }

    /// `cone(f)^i = source^{i+1} ⊕ target^i`, `d = [[-d_s, 0], [f, d_t]]`.
    pub fn cone(&self) -> SparseComplex<K> {
        let f = self.source.field();
        let (s, t) = (&self.source, &self.target);
        let lo = (s.lo() - 1).min(t.lo());
        let hi = (s.hi() - 1).max(t.hi());
        if lo >= hi {
            return SparseComplex::zero(f);
        }
        let dims: Vec<usize> = (lo..hi).map(|i| s.dim(i + 1) + t.dim(i)).collect();
        let mut diffs = Vec::new();
        for i in lo..hi - 1 {
            let (s1, s2, t0, t1) = (s.dim(i + 1), s.dim(i + 2), t.dim(i), t.dim(i + 1));
            let ds = s.d(i + 1).neg();
            let fi = self.comp(i + 1);
            let dt = t.d(i);
            let m = Sparse::assemble(f, s2 + t1, s1 + t0, &[(0, 0, &ds), (s2, 0, &fi), (s2, s1, &dt)]);
            diffs.push(m);
        }
        SparseComplex::new(f, lo, dims, diffs).expect("cone of a chain map")
    }

    /// Ranks of `H^i(f)` from the long exact sequence of the cone:
    /// `dim H^i(cone) = (dim H^i(t) - ρ_i) + (dim H^{i+1}(s) - ρ_{i+1})`.
    pub fn cohomology_ranks(&self) -> Dims {
        let hs = self.source.cohomology();
        let ht = self.target.cohomology();
        let hc = self.cone().cohomology();
        let g = |d: &Dims, i: i32| *d.get(&i).unwrap_or(&0) as i64;
        let lo = self.source.lo().min(self.target.lo()) - 2;
        let hi = self.source.hi().max(self.target.hi()) + 1;
        let mut rho: BTreeMap<i32, i64> = BTreeMap::new();
        rho.insert(lo, 0);
        for i in lo..hi {
            let r = g(&ht, i) - rho[&i] + g(&hs, i + 1) - g(&hc, i);
            rho.insert(i + 1, r);
        }
        rho.into_iter().filter(|(_, v)| *v > 0).map(|(k, v)| (k, v as usize)).collect()
    }
}

/// Double complex with horizontal `dh: (p,q) -> (p+1,q)` and vertical
/// `dv: (p,q) -> (p,q+1)` differentials that commute.
#[derive(Clone, Debug)]
pub struct DoubleComplex<K: Field> {
    pub field: K,
    pub terms: BTreeMap<(i32, i32), usize>,
    pub dh: BTreeMap<(i32, i32), Matrix<K>>,
    pub dv: BTreeMap<(i32, i32), Matrix<K>>,
}

impl<K: Field> DoubleComplex<K> {
    fn dim(&self, p: i32, q: i32) -> usize {
        *self.terms.get(&(p, q)).unwrap_or(&0)
    }

    fn get(map: &BTreeMap<(i32, i32), Matrix<K>>, f: &K, key: (i32, i32), rows: usize, cols: usize) -> Result<Matrix<K>, ComplexError> {
        match map.get(&key) {
            Some(m) if m.rows() == rows && m.cols() == cols => Ok(m.clone()),
            Some(_) => Err(ComplexError::Malformed(format!("map at {key:?} has wrong shape"))),
            None => Ok(Matrix::zeros(f, rows, cols)),
        }
    }

    /// Total complex with `D = dh + (-1)^p dv`.
    pub fn totalize(&self) -> Result<Complex<K>, ComplexError> {
        let f = &self.field;
        for k in self.dh.keys().chain(self.dv.keys()) {
            if !self.terms.contains_key(k) && self.dim(k.0, k.1) == 0 {
                let m = self.dh.get(k).or(self.dv.get(k)).unwrap();
                if m.rows() * m.cols() > 0 {
                    return Err(ComplexError::Malformed(format!("map out of missing term {k:?}")));
                }
            }
        }
        let keys: Vec<(i32, i32)> = self.terms.iter().filter(|(_, v)| **v > 0).map(|(k, _)| *k).collect();
        if keys.is_empty() {
            return Ok(Complex::zero(f));
        }
        for &(p, q) in &keys {
            let h = Self::get(&self.dh, f, (p, q), self.dim(p + 1, q), self.dim(p, q))?;
            let v = Self::get(&self.dv, f, (p, q), self.dim(p, q + 1), self.dim(p, q))?;
            let h2 = Self::get(&self.dh, f, (p + 1, q), self.dim(p + 2, q), self.dim(p + 1, q))?;
            let v2 = Self::get(&self.dv, f, (p, q + 1), self.dim(p, q + 2), self.dim(p, q + 1))?;
            if !h2.mul(&h).is_zero() || !v2.mul(&v).is_zero() {
                return Err(ComplexError::Malformed(format!("differential squares to nonzero at {:?}", (p, q))));
            }
            let hv = Self::get(&self.dh, f, (p, q + 1), self.dim(p + 1, q + 1), self.dim(p, q + 1))?.mul(&v);
            let vh = Self::get(&self.dv, f, (p + 1, q), self.dim(p + 1, q + 1), self.dim(p + 1, q))?.mul(&h);
            if hv != vh {
                return Err(ComplexError::Malformed(format!("squares do not commute at {:?}", (p, q))));
            }
        }
        let lo = keys.iter().map(|(p, q)| p + q).min().unwrap();
        let hi = keys.iter().map(|(p, q)| p + q).max().unwrap() + 1;
        let layout = |n: i32| -> Vec<((i32, i32), usize)> {
            let mut off = 0;
            let mut v = Vec::new();
            for &(p, q) in &keys {
                if p + q == n {
                    v.push(((p, q), off));
                    off += self.dim(p, q);
                }
            }
            v
        };
        let dims: Vec<usize> = (lo..hi).map(|n| layout(n).iter().map(|(k, _)| self.dim(k.0, k.1)).sum()).collect();
        let mut diffs = Vec::new();
        for n in lo..hi - 1 {
            let tgt: BTreeMap<(i32, i32), usize> = layout(n + 1).into_iter().collect();
            let mut m = Matrix::zeros(f, dims[(n + 1 - lo) as usize], dims[(n - lo) as usize]);
            for ((p, q), so) in layout(n) {
                if let Some(&to) = tgt.get(&(p + 1, q)) {
                    m.paste(to, so, &Self::get(&self.dh, f, (p, q), self.dim(p + 1, q), self.dim(p, q))?);
                }
                if let Some(&to) = tgt.get(&(p, q + 1)) {
                    let s = f.sign(p.rem_euclid(2) == 1);
                    m.paste(to, so, &Self::get(&self.dv, f, (p, q), self.dim(p, q + 1), self.dim(p, q))?.scale(&s));
                }
            }
            diffs.push(m);
        }
        Complex::new(f, lo, dims, diffs)
    }
}

/// Matrix of the linear map `Hom^*(A, B) -> Hom^*(A', B')` in the layout of
/// [`HomLayout`]; used to express pre/post-composition.
#[derive(Clone, Debug)]
pub struct HomLayout {
    /// For each Hom degree `q`: blocks `(j, offset, rows = dim B^{j+q}, cols = dim A^j)`.
    pub blocks: BTreeMap<i32, Vec<(i32, usize, usize, usize)>>,
    pub dims: BTreeMap<i32, usize>,
}

impl HomLayout {
    pub fn new<K: Field>(a: &Complex<K>, b: &Complex<K>) -> HomLayout {
        let (ra, rb) = (a.support(), b.support());
        let mut blocks = BTreeMap::new();
        let mut dims = BTreeMap::new();
        if ra.is_empty() || rb.is_empty() {
            return HomLayout { blocks, dims };
        }
        for q in (rb.start - ra.end + 1)..(rb.end - ra.start) {
            let mut off = 0;
            let mut v = Vec::new();
            for j in ra.clone() {
                let (r, c) = (b.dim(j + q), a.dim(j));
                if r * c > 0 {
                    v.push((j, off, r, c));
                    off += r * c;
                }
            }
            if off > 0 {
                blocks.insert(q, v);
                dims.insert(q, off);
            }
        }
        HomLayout { blocks, dims }
    }

    pub fn dim(&self, q: i32) -> usize {
        *self.dims.get(&q).unwrap_or(&0)
    }

    /// Splits a vector in degree `q` into per-`j` matrices.
    pub fn unpack<K: Field>(&self, f: &K, q: i32, v: &[K::Elem]) -> BTreeMap<i32, Matrix<K>> {
        let mut out = BTreeMap::new();
        if let Some(bl) = self.blocks.get(&q) {
            for &(j, off, r, c) in bl {
                let mut m = Matrix::zeros(f, r, c);
                for x in 0..r {
                    for y in 0..c {
                        m.set(x, y, v[off + x * c + y].clone());
                    }
                }
                out.insert(j, m);
            }
        }
        out
    }

    /// Inverse of [`HomLayout::unpack`]; blocks absent from the layout are dropped.
    pub fn pack<K: Field>(&self, f: &K, q: i32, comps: &BTreeMap<i32, Matrix<K>>) -> Vec<K::Elem> {
        let mut v = vec![f.zero(); self.dim(q)];
        if let Some(bl) = self.blocks.get(&q) {
            for &(j, off, r, c) in bl {
                if let Some(m) = comps.get(&j) {
                    for x in 0..r {
                        for y in 0..c {
                            v[off + x * c + y] = m.get(x, y).clone();
                        }
                    }
                }
            }
        }
        v
    }
}

/// Builds the dense matrix of a linear map `Hom^q(src layout) -> Hom^{q'}(dst layout)`
/// given by `op` on component matrices.
pub fn hom_linear<K: Field>(
    f: &K,
    src: &HomLayout,
    q: i32,
    dst: &HomLayout,
    q2: i32,
    op: impl Fn(&BTreeMap<i32, Matrix<K>>) -> BTreeMap<i32, Matrix<K>>,
) -> Matrix<K> {
    let (n, m) = (src.dim(q), dst.dim(q2));
    let mut out = Matrix::zeros(f, m, n);
    for k in 0..n {
        let mut e = vec![f.zero(); n];
        e[k] = f.one();
        let comps = src.unpack(f, q, &e);
        let img = dst.pack(f, q2, &op(&comps));
        for (r, val) in img.into_iter().enumerate() {
            out.set(r, k, val);
        }
    }
    out
}

/// The Hom complex `Hom^*(A, B)` with `dψ = d_B ψ - (-1)^q ψ d_A`.
pub fn hom_complex<K: Field>(a: &Complex<K>, b: &Complex<K>) -> (Complex<K>, HomLayout) {
    let f = a.field();
    let lay = HomLayout::new(a, b);
    if lay.dims.is_empty() {
        return (Complex::zero(f), lay);
    }
    let lo = *lay.dims.keys().next().unwrap();
    let hi = *lay.dims.keys().last().unwrap() + 1;
    let dims = (lo..hi).map(|q| lay.dim(q)).collect();
    let mut diffs = Vec::new();
    for q in lo..hi - 1 {
        let s = f.sign(q.rem_euclid(2) == 1);
        let m = hom_linear(f, &lay, q, &lay, q + 1, |c| {
            let mut out: BTreeMap<i32, Matrix<K>> = BTreeMap::new();
            for (j, psi) in c {
                // d_B ψ_j lands in Hom(A^j, B^{j+q+1})
                let t = b.d(j + q).mul(psi);
                out.entry(*j).and_modify(|m| *m = m.add(&t)).or_insert(t);
                // ψ_j d_A^{j-1} lands in Hom(A^{j-1}, B^{j+q}) = component j-1
                let u = psi.mul(&a.d(j - 1)).scale(&f.neg(&s));
                out.entry(j - 1).and_modify(|m| *m = m.add(&u)).or_insert(u);
            }
            out
        });
        diffs.push(m);
    }
    (Complex::new(f, lo, dims, diffs).expect("hom complex"), lay)
}

/// `ψ ↦ ψ ∘ g` as a chain map `Hom(A, B) -> Hom(A', B)` for `g: A' -> A`.
pub fn hom_precompose<K: Field>(g: &ChainMap<K>, b: &Complex<K>) -> ChainMap<K> {
    let (src, ls) = hom_complex(g.target(), b);
    let (dst, ld) = hom_complex(g.source(), b);
    let f = b.field();
    let mut comps = BTreeMap::new();
    for q in src.support() {
        let m = hom_linear(f, &ls, q, &ld, q, |c| c.iter().map(|(j, psi)| (*j, psi.mul(&g.comp(*j)))).collect());
        comps.insert(q, m);
    }
    ChainMap::unchecked(src, dst, comps).expect("precomposition")
}

/// `ψ ↦ g ∘ ψ` as a chain map `Hom(A, B) -> Hom(A, B')` for `g: B -> B'`.
pub fn hom_postcompose<K: Field>(a: &Complex<K>, g: &ChainMap<K>) -> ChainMap<K> {
    let (src, ls) = hom_complex(a, g.source());
    let (dst, ld) = hom_complex(a, g.target());
    let f = a.field();
    let mut comps = BTreeMap::new();
    for q in src.support() {
        let m = hom_linear(f, &ls, q, &ld, q, |c| c.iter().map(|(j, psi)| (*j, g.comp(j + q).mul(psi))).collect());
        comps.insert(q, m);
    }
    ChainMap::unchecked(src, dst, comps).expect("postcomposition")
}
