//! Internal Hom, the dual `D'F = Hom(F, k)` and the evaluation map
//! `D'F ⊗ G -> Hom(F, G)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{CellSheaf, Cobar, SheafMorphism};
use crate::exactalg::{ChainMap, Complex, Field, Matrix};

/// A sheaf whose stalk at `σ` is a cobar complex over the cells above `σ`.
#[derive(Clone, Debug)]
pub struct StarSheaf<K: Field> {
    pub sheaf: CellSheaf<K>,
    pub cobars: Vec<Cobar<K>>,
}

fn upset_mask(cx: &super::CellComplex, s: usize) -> Vec<bool> {
    let mut m = alloc::vec![false; cx.len()];
    m[s] = true;
    for &t in cx.up(s) {
        m[t] = true;
    }
    m
}

/// Internal Hom: `Hom(F, G)(σ) = RHom(F|star σ, G|star σ)`, where the
/// open star of `σ` is the set of cells above it.
pub fn internal_hom<K: Field>(f: &CellSheaf<K>, g: &CellSheaf<K>) -> StarSheaf<K> {
    let cx = f.complex.clone();
    let cobars: Vec<Cobar<K>> = (0..cx.len()).map(|s| Cobar::build(f, g, Some(&upset_mask(&cx, s)))).collect();
    let stalks: Vec<Complex<K>> = cobars.iter().map(|c| Complex::from_sparse(c.complex.clone())).collect();
    let mut maps = BTreeMap::new();
    for s in 0..cx.len() {
        if stalks[s].is_zero() {
            continue;
        }
        for &t in cx.up(s) {
            if !stalks[t].is_zero() {
                maps.insert((s, t), Cobar::restrict(&cobars[s], &cobars[t]).to_dense());
            }
        }
    }
    let sheaf = CellSheaf::new(cx, f.field(), stalks, maps).expect("restriction maps have matching shapes");
    StarSheaf { sheaf, cobars }
}

/// `D'F = Hom(F, k)`.
pub fn dual<K: Field>(f: &CellSheaf<K>) -> StarSheaf<K> {
    internal_hom(f, &CellSheaf::constant(f.complex.clone(), f.field()))
}

/// Evaluation `D'F ⊗ G -> Hom(F, G)`, cell by cell:
/// `φ ⊗ g ↦ (-1)^{|g| q} G(σ → σ_k)(g) ∘ φ` on a chain `σ ≤ σ_0 < ... < σ_k`,
/// `q` the Hom degree of `φ`.
pub fn evaluation<K: Field>(f: &CellSheaf<K>, g: &CellSheaf<K>, df: &StarSheaf<K>, h: &StarSheaf<K>) -> SheafMorphism<K> {
    let field = f.field();
    let source = df.sheaf.tensor(g).expect("same complex");
    let cx = f.complex.clone();
    let mut comps = Vec::with_capacity(cx.len());
    for s in 0..cx.len() {
        let (dcob, hcob) = (&df.cobars[s], &h.cobars[s]);
        let src = source.stalk(s).clone();
        let tgt = h.sheaf.stalk(s).clone();
        let gs = g.stalk(s);
        let (dfs, gr) = (df.sheaf.stalk(s), gs.support());
        let mut m: BTreeMap<i32, Matrix<K>> = src.support().map(|n| (n, Matrix::zeros(field, tgt.dim(n), src.dim(n)))).collect();
        // offsets of the left factor's degree inside the tensor
        let toff = |n: i32, a: i32| -> usize { dfs.support().take_while(|&i| i < a).map(|i| dfs.dim(i) * gs.dim(n - i)).sum() };
        for (ci, c) in dcob.chains.iter().enumerate() {
            let Some(hi) = hcob.chain_index(c) else { continue };
            let last = *c.last().unwrap();
            let gmap = g.map(s, last);
            for q in dcob.hom_degrees(ci) {
                let Some((mdeg, off, _)) = dcob.block(ci, q) else { continue };
                let fdim = f.stalk(c[0]).dim(-q);
                for p in gr.clone() {
                    let Some((hdeg, hoff, hl)) = hcob.block(hi, q + p) else { continue };
                    let Some(&(_, off2, rows, cols)) = hl.blocks[&(q + p)].iter().find(|b| b.0 == -q) else { continue };
                    debug_assert_eq!(cols, fdim);
                    let n = mdeg + p;
                    debug_assert_eq!(hdeg, n);
                    let gp = gmap.comp(p);
                    let sgn = field.sign((p * q).rem_euclid(2) == 1);
                    let gdim = gs.dim(p);
                    let base = toff(n, mdeg);
                    let mm = m.get_mut(&n).expect("degree in support");
                    for y in 0..fdim {
                        let a = off + y;
                        for b in 0..gdim {
                            let col = base + a * gdim + b;
                            for x in 0..rows {
                                let v = gp.get(x, b);
                                if !field.is_zero(v) {
                                    mm.set(hoff + off2 + x * cols + y, col, field.mul(&sgn, v));
                                }
                            }
                        }
                    }
                }
            }
        }
        comps.push(ChainMap::new(src, tgt, m).expect("evaluation is a chain map"));
    }
    SheafMorphism { source, target: h.sheaf.clone(), comps }
}
