use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::geom::{pieces, sign};
use super::{Front, PlFront, ValidationReport};
use crate::q::{Ext, Q};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Witness {
    Points { bottom: usize, top: usize },
    Sheets { bottom: usize, top: usize },
}

/// A Reeb chord of a single front.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chord {
    pub x: Q,
    pub t_bottom: Q,
    pub t_top: Q,
    pub length: Q,
    pub degree: i32,
    /// Morse index of the height gap: 1 at a local maximum, 0 otherwise.
    pub index: u8,
    pub witness: Witness,
}

fn chords_unchecked(f: &Front) -> Vec<Chord> {
    let mut out = Vec::new();
    match f {
        Front::Point(p) => {
            for i in 0..p.points.len() {
                for j in i + 1..p.points.len() {
                    let (a, b) = (&p.points[i], &p.points[j]);
                    out.push(Chord {
                        x: Q::zero(),
                        t_bottom: a.clone(),
                        t_top: b.clone(),
                        length: b - a,
                        degree: point_degree(&p.potentials, i, j),
                        index: 0,
                        witness: Witness::Points { bottom: i, top: j },
                    });
                }
            }
        }
        Front::Pl(pl) => {
            for a in 0..pl.sheets.len() {
                for b in a + 1..pl.sheets.len() {
                    let ps = pieces(&pl.sheets[a], &pl.sheets[b]);
                    for w in ps.windows(2) {
                        let (l, r) = (w[0].slope_diff(), w[1].slope_diff());
                        if sign(&l) == sign(&r) {
                            continue;
                        }
                        let d = &w[1].d0;
                        let (top, bottom) = if d.is_positive() { (a, b) } else { (b, a) };
                        // slope of top - bottom just left of the chord
                        let gap_left = if d.is_positive() { l } else { -l };
                        let index = if gap_left.is_positive() { 1 } else { 0 };
                        let ta = pl.sheets[a].value(&w[1].x0).unwrap();
                        let tb = pl.sheets[b].value(&w[1].x0).unwrap();
                        let (t_top, t_bottom) = if top == a { (ta, tb) } else { (tb, ta) };
                        out.push(Chord {
                            x: w[1].x0.clone(),
                            length: &t_top - &t_bottom,
                            t_bottom,
                            t_top,
                            degree: pl_degree(&pl.potentials, bottom, top, index),
                            index,
                            witness: Witness::Sheets { bottom, top },
                        });
                    }
                }
            }
        }
    }
    out.sort_by(|p, q| (&p.x, &p.t_bottom, &p.t_top, &p.witness).cmp(&(&q.x, &q.t_bottom, &q.t_top, &q.witness)));
    out
}

/// `n - deg = d(a) - d(b) + ind - 1` with `a` the bottom endpoint and `n = 0`.
fn point_degree(pots: &[i64], bottom: usize, top: usize) -> i32 {
    (1 + pots[top] - pots[bottom]) as i32
}

/// `n - deg = d(a) - d(b) + ind - 1` with `a` the bottom endpoint and `n = 1`.
fn pl_degree(pots: &[i64], bottom: usize, top: usize, index: u8) -> i32 {
    (2 + pots[top] - pots[bottom] - index as i64) as i32
}

/// All Reeb chords with degrees, sorted by position.
pub fn enumerate_chords(f: &Front) -> Result<Vec<Chord>, ValidationReport> {
    let f = f.clone().prepare()?;
    Ok(chords_unchecked(&f))
}

/// Degree of a chord of `f` from its witness.
pub fn chord_degree(f: &Front, c: &Chord) -> Result<i32, ValidationReport> {
    let f = f.clone().prepare()?;
    Ok(match (&f, &c.witness) {
        (Front::Point(p), Witness::Points { bottom, top }) => point_degree(&p.potentials, *bottom, *top),
        (Front::Pl(p), Witness::Sheets { bottom, top }) => pl_degree(&p.potentials, *bottom, *top, c.index),
        _ => c.degree,
    })
}

/// `c_i = min { length : deg = i or deg = n - i }`, `+inf` when empty, for
/// `i` in `0..=n` and every degree that occurs.
pub fn min_chord_lengths(f: &Front, chords: &[Chord]) -> BTreeMap<i32, Ext> {
    let n = f.n();
    let mut keys: BTreeSet<i32> = (0..=n).collect();
    for c in chords {
        keys.insert(c.degree);
        keys.insert(n - c.degree);
    }
    keys.into_iter()
        .map(|i| {
            let m = chords.iter().filter(|c| c.degree == i || c.degree == n - i).map(|c| c.length.clone()).min();
            (i, m.map_or(Ext::PosInf, Ext::Fin))
        })
        .collect()
}

/// Chord counts per degree.
pub fn chord_counts(chords: &[Chord]) -> BTreeMap<i32, usize> {
    let mut m = BTreeMap::new();
    for c in chords {
        *m.entry(c.degree).or_insert(0) += 1;
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MixedKind {
    /// Slope difference of two sheets changes sign, or a pair of points.
    SignChange,
    /// A sheet passes over a cusp of the other front with a slope in the cusp's range.
    CuspWindow,
}

/// A chord between two fronts. `u = t_f - t_g`: translating `g` by `u`
/// makes the endpoints meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedChord {
    pub x: Q,
    pub u: Q,
    pub f_part: usize,
    pub g_part: usize,
    pub kind: MixedKind,
}

/// Degenerate contact between two fronts at a fixed offset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degeneracy {
    pub x0: Q,
    pub x1: Q,
    pub u: Q,
    pub f_part: usize,
    pub g_part: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MixedAnalysis {
    pub chords: Vec<MixedChord>,
    /// Parallel overlapping segments; a translate by `u` makes them coincide.
    pub parallel: Vec<Degeneracy>,
    /// Cusps of the two fronts above the same `x`.
    pub cusp_pairs: Vec<Degeneracy>,
}

impl MixedAnalysis {
    /// Signed chord lengths, sorted and distinct.
    pub fn chord_values(&self) -> Vec<Q> {
        let s: BTreeSet<Q> = self.chords.iter().map(|c| c.u.clone()).collect();
        s.into_iter().collect()
    }

    /// Every offset at which the overlay degenerates.
    pub fn degenerate_values(&self) -> Vec<Q> {
        let mut s: BTreeSet<Q> = self.chords.iter().map(|c| c.u.clone()).collect();
        s.extend(self.parallel.iter().map(|d| d.u.clone()));
        s.extend(self.cusp_pairs.iter().map(|d| d.u.clone()));
        s.into_iter().collect()
    }
}

fn window_hits(f: &PlFront, g: &PlFront, flip: bool, out: &mut MixedAnalysis) {
    // sheets of f passing over cusps of g
    for cg in g.cusp_geoms() {
        for (k, s) in f.sheets.iter().enumerate() {
            if !s.spans(&cg.x) {
                continue;
            }
            let (sl, sr) = (s.slope_left(&cg.x).unwrap(), s.slope_right(&cg.x).unwrap());
            let (lo, hi) = if sl < sr { (sl, sr) } else { (sr, sl) };
            if hi > cg.window.0 && lo < cg.window.1 {
                let d = s.value(&cg.x).unwrap() - &cg.t;
                let (u, fp, gp) = if flip { (-d, cg.upper, k) } else { (d, k, cg.upper) };
                out.chords.push(MixedChord { x: cg.x.clone(), u, f_part: fp, g_part: gp, kind: MixedKind::CuspWindow });
            }
        }
    }
}

/// Chords and degenerate contacts between `f` and `g` as `g` is translated.
/// Both fronts must be of the same kind.
pub fn mixed_chords(f: &Front, g: &Front) -> MixedAnalysis {
    let mut out = MixedAnalysis::default();
    match (f, g) {
        (Front::Point(a), Front::Point(b)) => {
            for (i, s) in a.points.iter().enumerate() {
                for (j, t) in b.points.iter().enumerate() {
                    out.chords.push(MixedChord { x: Q::zero(), u: s - t, f_part: i, g_part: j, kind: MixedKind::SignChange });
                }
            }
        }
        (Front::Pl(a), Front::Pl(b)) => {
            for (i, sa) in a.sheets.iter().enumerate() {
                for (j, sb) in b.sheets.iter().enumerate() {
                    let ps = pieces(sa, sb);
                    for p in &ps {
                        if p.slope_a == p.slope_b {
                            out.parallel.push(Degeneracy { x0: p.x0.clone(), x1: p.x1.clone(), u: p.d0.clone(), f_part: i, g_part: j });
                        }
                    }
                    for w in ps.windows(2) {
                        let (l, r) = (sign(&w[0].slope_diff()), sign(&w[1].slope_diff()));
                        if l != 0 && r != 0 && l != r {
                            out.chords.push(MixedChord {
                                x: w[1].x0.clone(),
                                u: w[1].d0.clone(),
                                f_part: i,
                                g_part: j,
                                kind: MixedKind::SignChange,
                            });
                        }
                    }
                }
            }
            window_hits(a, b, false, &mut out);
            window_hits(b, a, true, &mut out);
            for ca in a.cusp_geoms() {
                for cb in b.cusp_geoms() {
                    if ca.x == cb.x {
                        out.cusp_pairs.push(Degeneracy {
                            x0: ca.x.clone(),
                            x1: ca.x.clone(),
                            u: &ca.t - &cb.t,
                            f_part: ca.upper,
                            g_part: cb.upper,
                        });
                    }
                }
            }
        }
        _ => {}
    }
    out.chords.sort_by(|p, q| (&p.u, &p.x, p.f_part, p.g_part).cmp(&(&q.u, &q.x, q.f_part, q.g_part)));
    out
}
