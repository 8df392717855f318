//! Constructible sheaves on the cell complexes cut out by fronts.
//!
//! A sheaf is a functor on the face poset: a stalk complex for every cell
//! and a generization map `F(σ) -> F(τ)` whenever `σ` lies in the closure
//! of `τ`.

mod complex;
mod derived;
mod legible;
mod nerve;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::exactalg::{ChainMap, Complex, Dims, Field};
use crate::q::Q;

pub use complex::{arrange, front_complex, ArrangeError, Cell, CellComplex, CellKind, Crossing, CurveTag, Curves, Line, Slab};
pub use derived::{dual, evaluation, internal_hom, StarSheaf};
pub use legible::*;
pub use nerve::Cobar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SheafError {
    Shape(String),
    Data(String),
    Complex(String),
}

impl core::fmt::Display for SheafError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SheafError::Shape(m) | SheafError::Data(m) | SheafError::Complex(m) => f.write_str(m),
        }
    }
}

/// A cellular sheaf. Maps are stored for related pairs of cells with
/// nonzero stalks; all other maps are zero.
#[derive(Clone, Debug)]
pub struct CellSheaf<K: Field> {
    pub complex: Arc<CellComplex>,
    field: K,
    stalks: Vec<Complex<K>>,
    maps: BTreeMap<(usize, usize), ChainMap<K>>,
}

impl<K: Field> CellSheaf<K> {
    /// `maps` must cover every pair `σ < τ` of cells with nonzero stalks.
    pub fn new(
        complex: Arc<CellComplex>,
        field: &K,
        stalks: Vec<Complex<K>>,
        maps: BTreeMap<(usize, usize), ChainMap<K>>,
    ) -> Result<Self, SheafError> {
        if stalks.len() != complex.len() {
            return Err(SheafError::Shape(format!("{} stalks for {} cells", stalks.len(), complex.len())));
        }
        for (&(s, t), m) in &maps {
            if !complex.le(s, t) || s == t {
                return Err(SheafError::Shape(format!("map from cell {s} to cell {t}, which is not a coface")));
            }
            if m.source().dims() != stalks[s].dims() || m.target().dims() != stalks[t].dims() {
                return Err(SheafError::Shape(format!("map from cell {s} to cell {t} has the wrong shape")));
            }
        }
        let maps = maps.into_iter().filter(|((s, t), _)| !stalks[*s].is_zero() && !stalks[*t].is_zero()).collect();
        Ok(CellSheaf { complex, field: field.clone(), stalks, maps })
    }

    /// Builds a sheaf from maps along covering relations (dimension jumps
    /// of one, or of two when nothing lies between); longer relations are
    /// filled in by composing along the first intermediate cell.
    pub fn from_covers(
        complex: Arc<CellComplex>,
        field: &K,
        stalks: Vec<Complex<K>>,
        covers: BTreeMap<(usize, usize), ChainMap<K>>,
    ) -> Result<Self, SheafError> {
        let mut maps = covers;
        let n = complex.len();
        for s in 0..n {
            for &t in complex.up(s) {
                if maps.contains_key(&(s, t)) || stalks[s].is_zero() || stalks[t].is_zero() {
                    continue;
                }
                let mid = complex.up(s).iter().copied().find(|&r| r != t && complex.le(r, t));
                let m = match mid {
                    Some(r) => {
                        let a = maps.get(&(s, r)).cloned().unwrap_or_else(|| ChainMap::zero(&stalks[s], &stalks[r]));
                        let b = maps.get(&(r, t)).cloned().unwrap_or_else(|| ChainMap::zero(&stalks[r], &stalks[t]));
                        a.then(&b)
                    }
                    None => ChainMap::zero(&stalks[s], &stalks[t]),
                };
                maps.insert((s, t), m);
            }
        }
        CellSheaf::new(complex, field, stalks, maps)
    }

    pub fn zero(complex: Arc<CellComplex>, field: &K) -> Self {
        let stalks = (0..complex.len()).map(|_| Complex::zero(field)).collect();
        CellSheaf { complex, field: field.clone(), stalks, maps: BTreeMap::new() }
    }

    /// The constant sheaf `k` on every cell.
    pub fn constant(complex: Arc<CellComplex>, field: &K) -> Self {
        let k = Complex::concentrated(field, 0, 1);
        let stalks: Vec<Complex<K>> = (0..complex.len()).map(|_| k.clone()).collect();
        let mut maps = BTreeMap::new();
        for s in 0..complex.len() {
            for &t in complex.up(s) {
                maps.insert((s, t), ChainMap::identity(&k));
            }
        }
        CellSheaf { complex, field: field.clone(), stalks, maps }
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn stalk(&self, s: usize) -> &Complex<K> {
        &self.stalks[s]
    }

    pub fn stalks(&self) -> &[Complex<K>] {
        &self.stalks
    }

    /// Generization map `F(s) -> F(t)` for `s <= t`.
    pub fn map(&self, s: usize, t: usize) -> ChainMap<K> {
        if s == t {
            return ChainMap::identity(&self.stalks[s]);
        }
        self.maps.get(&(s, t)).cloned().unwrap_or_else(|| ChainMap::zero(&self.stalks[s], &self.stalks[t]))
    }

    pub fn map_ref(&self, s: usize, t: usize) -> Option<&ChainMap<K>> {
        self.maps.get(&(s, t))
    }

    pub fn is_zero(&self) -> bool {
        self.stalks.iter().all(|c| c.is_zero())
    }

    /// Cells with nonzero stalk.
    pub fn support(&self) -> Vec<usize> {
        (0..self.stalks.len()).filter(|&s| !self.stalks[s].is_zero()).collect()
    }

    /// Whether the stalks on unbounded cells vanish.
    pub fn compactly_supported(&self) -> bool {
        self.complex.cells.iter().enumerate().all(|(i, c)| c.bounded || self.stalks[i].is_zero())
    }

    /// Pullback along the map sending each cell of `target` to the cell of
    /// this complex containing its sample point moved down by `shift`.
    /// `target` must refine this complex moved up by `shift`.
    pub fn pullback(&self, target: Arc<CellComplex>, shift: &Q) -> Result<CellSheaf<K>, SheafError> {
        let pi: Vec<usize> = target.cells.iter().map(|c| self.complex.locate(&c.x, &(&c.t - shift))).collect();
        let stalks: Vec<Complex<K>> = pi.iter().map(|&p| self.stalks[p].clone()).collect();
        let mut maps = BTreeMap::new();
        for s in 0..target.len() {
            if stalks[s].is_zero() {
                continue;
            }
            for &t in target.up(s) {
                if stalks[t].is_zero() {
                    continue;
                }
                if !self.complex.le(pi[s], pi[t]) {
                    return Err(SheafError::Complex(format!("target complex does not refine the source near cell {s}")));
                }
                maps.insert((s, t), self.map(pi[s], pi[t]));
            }
        }
        Ok(CellSheaf { complex: target, field: self.field.clone(), stalks, maps })
    }

    /// `T_c F`: the same sheaf on the complex moved up by `c`.
    pub fn translate(&self, c: &Q) -> CellSheaf<K> {
        CellSheaf { complex: Arc::new(self.complex.translated(c)), ..self.clone() }
    }

    /// Cellwise tensor product.
    pub fn tensor(&self, other: &CellSheaf<K>) -> Result<CellSheaf<K>, SheafError> {
        self.same_complex(other)?;
        let stalks: Vec<Complex<K>> = self.stalks.iter().zip(&other.stalks).map(|(a, b)| a.tensor(b)).collect();
        let mut maps = BTreeMap::new();
        for (&(s, t), m) in &self.maps {
            if let Some(n) = other.maps.get(&(s, t)) {
                maps.insert((s, t), m.tensor(n));
            }
        }
        CellSheaf::new(self.complex.clone(), &self.field, stalks, maps)
    }

    /// Cellwise direct sum.
    pub fn direct_sum(&self, other: &CellSheaf<K>) -> Result<CellSheaf<K>, SheafError> {
        self.same_complex(other)?;
        let stalks: Vec<Complex<K>> = self.stalks.iter().zip(&other.stalks).map(|(a, b)| direct_sum(a, b)).collect();
        let mut maps = BTreeMap::new();
        for s in 0..stalks.len() {
            for &t in self.complex.up(s) {
                if stalks[s].is_zero() || stalks[t].is_zero() {
                    continue;
                }
                maps.insert((s, t), direct_sum_map(&self.map(s, t), &other.map(s, t)));
            }
        }
        CellSheaf::new(self.complex.clone(), &self.field, stalks, maps)
    }

    /// `F[n]`.
    pub fn shift(&self, n: i32) -> CellSheaf<K> {
        let stalks: Vec<Complex<K>> = self.stalks.iter().map(|c| c.shift(n)).collect();
        let maps = self
            .maps
            .iter()
            .map(|(&k, m)| {
                let comps = m.target().support().map(|i| (i - n, m.comp(i))).collect();
                (k, ChainMap::unchecked(stalks[k.0].clone(), stalks[k.1].clone(), comps).expect("shifted map"))
            })
            .collect();
        CellSheaf { complex: self.complex.clone(), field: self.field.clone(), stalks, maps }
    }

    pub(crate) fn same_complex(&self, other: &CellSheaf<K>) -> Result<(), SheafError> {
        if Arc::ptr_eq(&self.complex, &other.complex) || self.complex == other.complex {
            Ok(())
        } else {
            Err(SheafError::Complex(String::from("sheaves live on different complexes; refine both to a common arrangement first")))
        }
    }

    /// Triples `a < b < c` where `F(a -> b -> c)` differs from `F(a -> c)`.
    pub fn functoriality_failures(&self) -> Vec<(usize, usize, usize)> {
        let cx = &self.complex;
        let mut bad = Vec::new();
        for a in (0..cx.len()).filter(|&a| !self.stalks[a].is_zero()) {
            for &b in cx.up(a) {
                let m = self.map(a, b);
                for &c in cx.up(b) {
                    if !self.stalks[c].is_zero() && m.then(&self.map(b, c)) != self.map(a, c) {
                        bad.push((a, b, c));
                    }
                }
            }
        }
        bad
    }

    /// Dimension vector of every stalk.
    pub fn stalk_dims(&self) -> Vec<Dims> {
        self.stalks.iter().map(|c| c.dims()).collect()
    }

    /// Downward propagation `F(x, t) -> F(x, t - c)` along the vertical
    /// segment between the two points.
    pub fn propagate(&self, x: &Q, t: &Q, c: &Q) -> Result<ChainMap<K>, SheafError> {
        let lo = t - c;
        let walk = self.complex.vertical_walk(x, t, &lo);
        let mut m = ChainMap::identity(&self.stalks[walk[0]]);
        for w in walk.windows(2) {
            let (a, b) = (w[0], w[1]);
            let step = if self.complex.le(a, b) {
                self.map(a, b)
            } else {
                let up = self.map(b, a);
                invert(&up).ok_or_else(|| {
                    SheafError::Data(format!("map from cell {b} up to cell {a} is not invertible, so sections do not propagate downward"))
                })?
            };
            m = m.then(&step);
        }
        Ok(m)
    }
}

/// A morphism of sheaves on one complex, given cellwise.
#[derive(Clone, Debug)]
pub struct SheafMorphism<K: Field> {
    pub source: CellSheaf<K>,
    pub target: CellSheaf<K>,
    pub comps: Vec<ChainMap<K>>,
}

impl<K: Field> SheafMorphism<K> {
    /// Cells where the naturality square fails.
    pub fn naturality_failures(&self) -> Vec<(usize, usize)> {
        let cx = &self.source.complex;
        let mut bad = Vec::new();
        for s in 0..cx.len() {
            for &t in cx.up(s) {
                let a = self.source.map(s, t).then(&self.comps[t]);
                let b = self.comps[s].then(&self.target.map(s, t));
                if !a.add(&b.scale(&self.source.field.neg(&self.source.field.one()))).is_zero() {
                    bad.push((s, t));
                }
            }
        }
        bad
    }
}

/// Propagation morphism `F -> T_c F` realized on `refined`, which must
/// refine both the complex of `F` and its translate by `c`.
pub fn propagation_map<K: Field>(s: &CellSheaf<K>, c: &Q, refined: Arc<CellComplex>) -> Result<SheafMorphism<K>, SheafError> {
    use num_traits::Signed;
    if !c.is_positive() {
        return Err(SheafError::Data(String::from("propagation needs a positive shift")));
    }
    let source = s.pullback(refined.clone(), &Q::default())?;
    let target = s.pullback(refined.clone(), c)?;
    let comps = refined
        .cells
        .iter()
        .enumerate()
        .map(|(i, cell)| {
            if source.stalk(i).is_zero() || target.stalk(i).is_zero() {
                Ok(ChainMap::zero(source.stalk(i), target.stalk(i)))
            } else {
                s.propagate(&cell.x, &cell.t, c)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SheafMorphism { source, target, comps })
}

pub(crate) fn direct_sum<K: Field>(a: &Complex<K>, b: &Complex<K>) -> Complex<K> {
    let f = a.field();
    let mut dims = a.dims();
    for (k, v) in b.dims() {
        *dims.entry(k).or_insert(0) += v;
    }
    if dims.is_empty() {
        return Complex::zero(f);
    }
    let lo = *dims.keys().next().unwrap();
    let hi = *dims.keys().last().unwrap();
    let dv = (lo..=hi).map(|i| a.dim(i) + b.dim(i)).collect();
    let diffs = (lo..hi).map(|i| a.d(i).direct_sum(&b.d(i))).collect();
    Complex::new(f, lo, dv, diffs).expect("direct sum of complexes")
}

pub(crate) fn direct_sum_map<K: Field>(f: &ChainMap<K>, g: &ChainMap<K>) -> ChainMap<K> {
    let src = direct_sum(f.source(), g.source());
    let tgt = direct_sum(f.target(), g.target());
    let comps = src.support().map(|i| (i, f.comp(i).direct_sum(&g.comp(i)))).collect();
    ChainMap::unchecked(src, tgt, comps).expect("direct sum of maps")
}

/// Inverse of an isomorphism of complexes.
pub(crate) fn invert<K: Field>(m: &ChainMap<K>) -> Option<ChainMap<K>> {
    if !m.is_iso() {
        return None;
    }
    let mut comps = BTreeMap::new();
    for i in m.source().support() {
        comps.insert(i, m.comp(i).inverse()?);
    }
    ChainMap::unchecked(m.target().clone(), m.source().clone(), comps).ok()
}
