//! Cobar model for derived Hom of cellular sheaves.
//!
//! `RHom(F, G)` over a set `U` of cells is computed by the product over
//! chains `σ0 < ... < σk` in `U` of `Hom(F(σ0), G(σk))`, shifted down by
//! `k`, with the alternating face differential plus the internal one.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::CellSheaf;
use crate::exactalg::{hom_complex, ChainMap, Complex, Field, HomLayout, Matrix, Sparse, SparseChainMap, SparseComplex};

#[derive(Clone, Debug)]
pub struct Cobar<K: Field> {
    pub complex: SparseComplex<K>,
    pub chains: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
    layouts: Vec<HomLayout>,
    /// Per chain: Hom degree `q` to offset inside total degree `k + q`.
    offsets: Vec<BTreeMap<i32, usize>>,
}

type HomCache<K> = BTreeMap<(usize, usize), (Complex<K>, HomLayout)>;

impl<K: Field> Cobar<K> {
    /// Cobar complex of `(F, G)` restricted to the cells with `allowed[σ]`,
    /// or all cells when `allowed` is `None`.
    pub fn build(f: &CellSheaf<K>, g: &CellSheaf<K>, allowed: Option<&[bool]>) -> Cobar<K> {
        let cx = &f.complex;
        let field = f.field();
        let ok = |s: usize| allowed.is_none_or(|a| a[s]);
        let mut homs: HomCache<K> = BTreeMap::new();
        let mut chains: Vec<Vec<usize>> = Vec::new();
        let mut stack: Vec<Vec<usize>> =
            (0..cx.len()).filter(|&s| ok(s) && !f.stalk(s).is_zero()).map(|s| alloc::vec![s]).collect();
        while let Some(c) = stack.pop() {
            let last = *c.last().unwrap();
            if !g.stalk(last).is_zero() {
                let h = homs.entry((c[0], last)).or_insert_with(|| hom_complex(f.stalk(c[0]), g.stalk(last)));
                if !h.1.dims.is_empty() {
                    chains.push(c.clone());
                }
            }
            for &t in cx.up(last) {
                if ok(t) {
                    let mut d = c.clone();
                    d.push(t);
                    stack.push(d);
                }
            }
        }
        chains.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let index: BTreeMap<Vec<usize>, usize> = chains.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let layouts: Vec<HomLayout> = chains.iter().map(|c| homs[&(c[0], *c.last().unwrap())].1.clone()).collect();

        let mut sizes: BTreeMap<i32, usize> = BTreeMap::new();
        let mut offsets = Vec::with_capacity(chains.len());
        for (c, lay) in chains.iter().zip(&layouts) {
            let k = c.len() as i32 - 1;
            let mut o = BTreeMap::new();
            for (&q, &d) in &lay.dims {
                let e = sizes.entry(k + q).or_insert(0);
                o.insert(q, *e);
                *e += d;
            }
            offsets.push(o);
        }
        if sizes.is_empty() {
            return Cobar { complex: SparseComplex::zero(field), chains, index, layouts, offsets };
        }
        let lo = *sizes.keys().next().unwrap();
        let hi = *sizes.keys().last().unwrap();
        let dim = |n: i32| *sizes.get(&n).unwrap_or(&0);
        let mut trips: BTreeMap<i32, Vec<(usize, usize, K::Elem)>> = BTreeMap::new();

        for (ci, c) in chains.iter().enumerate() {
            let k = c.len() as i32 - 1;
            let (hc, _) = &homs[&(c[0], *c.last().unwrap())];
            let s = field.sign(k % 2 == 1);
            // internal differential
            for (&q, &o) in &offsets[ci] {
                let Some(&o2) = offsets[ci].get(&(q + 1)) else { continue };
                let m = hc.d(q);
                let t = trips.entry(k + q).or_default();
                for r in 0..m.rows() {
                    for col in 0..m.cols() {
                        let v = m.get(r, col);
                        if !field.is_zero(v) {
                            t.push((o2 + r, o + col, field.mul(&s, v)));
                        }
                    }
                }
            }
            // faces of c map into c
            if k == 0 {
                continue;
            }
            let ku = k as usize;
            for i in 0..=ku {
                let mut face = c.clone();
                face.remove(i);
                let Some(&fi) = index.get(&face) else { continue };
                let sg = field.sign(i % 2 == 1);
                for (&q, &src_off) in &offsets[fi] {
                    let Some(&dst_off) = offsets[ci].get(&q) else { continue };
                    let t = trips.entry(k - 1 + q).or_default();
                    let (sl, dl) = (&layouts[fi], &layouts[ci]);
                    if i == 0 {
                        let m = f.map(c[0], c[1]);
                        face_pre(field, sl, dl, q, &m, &sg, src_off, dst_off, t);
                    } else if i == ku {
                        let m = g.map(c[ku - 1], c[ku]);
                        face_post(field, sl, dl, q, &m, &sg, src_off, dst_off, t);
                    } else {
                        for z in 0..sl.dim(q) {
                            t.push((dst_off + z, src_off + z, sg.clone()));
                        }
                    }
                }
            }
        }
        let dims: Vec<usize> = (lo..=hi).map(dim).collect();
        let diffs: Vec<Sparse<K>> = (lo..hi)
            .map(|n| Sparse::from_triplets(field, dim(n + 1), dim(n), trips.remove(&n).unwrap_or_default()))
            .collect();
        let complex = SparseComplex::new(field, lo, dims, diffs).expect("cobar differential squares to zero");
        Cobar { complex, chains, index, layouts, offsets }
    }

    pub fn chain_index(&self, c: &[usize]) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn cohomology(&self) -> BTreeMap<i32, usize> {
        self.complex.cohomology()
    }

    /// Position of block `(chain, q)`: total degree and offset.
    pub fn block(&self, chain: usize, q: i32) -> Option<(i32, usize, &HomLayout)> {
        let o = *self.offsets[chain].get(&q)?;
        Some((self.chains[chain].len() as i32 - 1 + q, o, &self.layouts[chain]))
    }

    /// Hom degrees present on a chain.
    pub fn hom_degrees(&self, chain: usize) -> Vec<i32> {
        self.offsets[chain].keys().copied().collect()
    }

    /// Map of cobar complexes induced by `η(σ): G(σ) -> G'(σ)` at the last
    /// cell of each chain. `dst` is built from `(F, G')` on the same cells.
    pub fn postcompose(src: &Cobar<K>, dst: &Cobar<K>, eta: impl Fn(usize) -> ChainMap<K>) -> SparseChainMap<K> {
        let field = src.complex.field().clone();
        let mut trips: BTreeMap<i32, Vec<(usize, usize, K::Elem)>> = BTreeMap::new();
        let mut cache: BTreeMap<usize, ChainMap<K>> = BTreeMap::new();
        for (ci, c) in src.chains.iter().enumerate() {
            let Some(di) = dst.chain_index(c) else { continue };
            let last = *c.last().unwrap();
            let m = cache.entry(last).or_insert_with(|| eta(last)).clone();
            let k = c.len() as i32 - 1;
            for (&q, &so) in &src.offsets[ci] {
                let Some(&d_o) = dst.offsets[di].get(&q) else { continue };
                let t = trips.entry(k + q).or_default();
                face_post(&field, &src.layouts[ci], &dst.layouts[di], q, &m, &field.one(), so, d_o, t);
            }
        }
        assemble_map(&field, src, dst, trips)
    }

    /// Projection onto the chains of `dst`, whose cells form a subset.
    pub fn restrict(src: &Cobar<K>, dst: &Cobar<K>) -> SparseChainMap<K> {
        let field = src.complex.field().clone();
        let mut trips: BTreeMap<i32, Vec<(usize, usize, K::Elem)>> = BTreeMap::new();
        for (di, c) in dst.chains.iter().enumerate() {
            let Some(ci) = src.chain_index(c) else { continue };
            let k = c.len() as i32 - 1;
            for (&q, &d_o) in &dst.offsets[di] {
                let so = src.offsets[ci][&q];
                let t = trips.entry(k + q).or_default();
                for z in 0..dst.layouts[di].dim(q) {
                    t.push((d_o + z, so + z, field.one()));
                }
            }
        }
        assemble_map(&field, src, dst, trips)
    }
}

fn assemble_map<K: Field>(
    field: &K,
    src: &Cobar<K>,
    dst: &Cobar<K>,
    mut trips: BTreeMap<i32, Vec<(usize, usize, K::Elem)>>,
) -> SparseChainMap<K> {
    let mut comps = BTreeMap::new();
    for (&n, &d) in &src.complex.dims() {
        let m = Sparse::from_triplets(field, dst.complex.dim(n), d, trips.remove(&n).unwrap_or_default());
        comps.insert(n, m);
    }
    SparseChainMap::new(src.complex.clone(), dst.complex.clone(), comps).expect("induced map of cobar complexes")
}

/// Triplets of `ψ ↦ s · ψ ∘ m_j` from `Hom^q(A, B)` to `Hom^q(A', B)`, `m: A' -> A`.
#[allow(clippy::too_many_arguments)]
fn face_pre<K: Field>(
    f: &K,
    src: &HomLayout,
    dst: &HomLayout,
    q: i32,
    m: &ChainMap<K>,
    s: &K::Elem,
    so: usize,
    d_o: usize,
    out: &mut Vec<(usize, usize, K::Elem)>,
) {
    let (Some(sb), Some(db)) = (src.blocks.get(&q), dst.blocks.get(&q)) else { return };
    for &(j, off, r, c) in sb {
        let Some(&(_, off2, _, c2)) = db.iter().find(|b| b.0 == j) else { continue };
        let mj: Matrix<K> = m.comp(j);
        for y in 0..c {
            for y2 in 0..c2 {
                let v = mj.get(y, y2);
                if f.is_zero(v) {
                    continue;
                }
                let v = f.mul(s, v);
                for x in 0..r {
                    out.push((d_o + off2 + x * c2 + y2, so + off + x * c + y, v.clone()));
                }
            }
        }
    }
}

/// Triplets of `ψ ↦ s · m_{j+q} ∘ ψ` from `Hom^q(A, B)` to `Hom^q(A, B')`, `m: B -> B'`.
#[allow(clippy::too_many_arguments)]
fn face_post<K: Field>(
    f: &K,
    src: &HomLayout,
    dst: &HomLayout,
    q: i32,
    m: &ChainMap<K>,
    s: &K::Elem,
    so: usize,
    d_o: usize,
    out: &mut Vec<(usize, usize, K::Elem)>,
) {
    let (Some(sb), Some(db)) = (src.blocks.get(&q), dst.blocks.get(&q)) else { return };
    for &(j, off, r, c) in sb {
        let Some(&(_, off2, r2, _)) = db.iter().find(|b| b.0 == j) else { continue };
        let mj: Matrix<K> = m.comp(j + q);
        for x in 0..r {
            for x2 in 0..r2 {
                let v = mj.get(x2, x);
                if f.is_zero(v) {
                    continue;
                }
                let v = f.mul(s, v);
                for y in 0..c {
                    out.push((d_o + off2 + x2 * c + y, so + off + x * c + y, v.clone()));
                }
            }
        }
    }
}
