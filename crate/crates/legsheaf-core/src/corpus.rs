//! Bundled example fronts and sheaves.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::cellsheaf::{front_complex, CellSheaf, LegibleSheaf, RegionRef};
use crate::exactalg::{Complex, Field};
use crate::fronts::{Cusp, CuspKind, Front, PlFront, PointFront, Sheet};
use crate::q::{q, Q};

fn sheet(pts: &[(i64, i64, i64, i64)]) -> Sheet {
    Sheet::new(pts.iter().map(|&(xn, xd, tn, td)| (q(xn, xd), q(tn, td))).collect())
}

fn sheet_i(pts: &[(i64, i64)]) -> Sheet {
    Sheet::new(pts.iter().map(|&(x, t)| (q(x, 1), q(t, 1))).collect())
}

fn left(a: usize, b: usize) -> Cusp {
    Cusp { kind: CuspKind::Left, sheets: (a, b) }
}

fn right(a: usize, b: usize) -> Cusp {
    Cusp { kind: CuspKind::Right, sheets: (a, b) }
}

/// Two points at heights 0 and 1 whose single chord has degree 0.
pub fn point_pair() -> Front {
    Front::Point(PointFront { points: vec![q(0, 1), q(1, 1)], potentials: vec![0, -1] })
}

/// Diamond unknot with cusps at `(-1, 0)` and `(1, 0)`; sheet 0 on top.
pub fn unknot() -> Front {
    Front::Pl(PlFront {
        sheets: vec![sheet_i(&[(-1, 0), (0, 1), (1, 0)]), sheet_i(&[(-1, 0), (0, -1), (1, 0)])],
        cusps: vec![left(0, 1), right(0, 1)],
        potentials: vec![],
    })
}

/// Diamond eye with slopes `m` and `-m`, left cusp at `(x, t)`, width `2w`.
pub fn diamond(x: Q, t: Q, w: Q, m: Q) -> PlFront {
    let apex = &x + &w;
    let h = &m * &w;
    let end = &apex + &w;
    PlFront {
        sheets: vec![
            Sheet::new(vec![(x.clone(), t.clone()), (apex.clone(), &t + &h), (end.clone(), t.clone())]),
            Sheet::new(vec![(x, t.clone()), (apex, &t - &h), (end, t)]),
        ],
        cusps: vec![left(0, 1), right(0, 1)],
        potentials: vec![],
    }
}

/// Disjoint union of PL fronts; sheet indices of later parts are offset.
pub fn union(parts: &[PlFront]) -> PlFront {
    let mut out = PlFront { sheets: Vec::new(), cusps: Vec::new(), potentials: Vec::new() };
    let explicit = parts.iter().all(|p| !p.potentials.is_empty());
    for p in parts {
        let off = out.sheets.len();
        out.sheets.extend(p.sheets.iter().cloned());
        out.cusps.extend(p.cusps.iter().map(|c| Cusp { kind: c.kind, sheets: (c.sheets.0 + off, c.sheets.1 + off) }));
        if explicit {
            out.potentials.extend(p.potentials.iter().copied());
        }
    }
    out
}

/// Standard trefoil drawn with PL sheets: 3 crossings, 2 left and 2 right cusps.
pub fn trefoil() -> Front {
    Front::Pl(PlFront {
        sheets: vec![
            sheet(&[(0, 1, 0, 1), (1, 1, 2, 1), (3, 1, 8, 1), (5, 1, 14, 1), (9, 1, 26, 1), (11, 1, 28, 1), (12, 1, 57, 2)]),
            sheet(&[(0, 1, 0, 1), (1, 1, 0, 1), (3, 1, -2, 1), (5, 1, -4, 1), (9, 1, -22, 5), (11, 1, -22, 5)]),
            sheet(&[(1, 1, -5, 1), (3, 1, -1, 1), (5, 1, -9, 2), (9, 1, -1, 2), (11, 1, 51, 2), (12, 1, 57, 2)]),
            sheet(&[(1, 1, -5, 1), (9, 1, -5, 1), (11, 1, -22, 5)]),
        ],
        cusps: vec![left(0, 1), left(2, 3), right(1, 3), right(0, 2)],
        potentials: vec![],
    })
}

/// Two unknots, one directly above the other, with no crossings.
pub fn stacked_link() -> Front {
    let b = diamond(q(-5, 4), q(6, 1), q(3, 2), q(2, 1));
    Front::Pl(union(&[as_pl(unknot()), b]))
}

/// Two unknots side by side.
pub fn split_link() -> Front {
    let b = diamond(q(2, 1), q(1, 2), q(1, 1), q(3, 1));
    Front::Pl(union(&[as_pl(unknot()), b]))
}

/// Two eyes whose fronts cross twice: the bottom of the first meets the
/// top of the second at `x = -1`, and their tops cross at `x = 1/3`.
pub fn clasp() -> Front {
    let a = diamond(q(-2, 1), q(0, 1), q(2, 1), q(1, 1));
    let b = PlFront {
        sheets: vec![
            sheet_i(&[(-3, -5), (3, 7), (7, -1)]),
            sheet(&[(-3, 1, -5, 1), (1, 2, -12, 1), (7, 1, -1, 1)]),
        ],
        cusps: vec![left(0, 1), right(0, 1)],
        potentials: vec![],
    };
    Front::Pl(union(&[a, b]))
}

/// Unknot with two zigzags of opposite orientation, so the rotation number
/// is zero. It is loose and carries no nonzero simple sheaf.
pub fn zigzag_unknot() -> Front {
    let top0 = vec![(q(-6, 1), q(0, 1)), (q(-2, 1), q(30, 1)), (q(-1, 1), q(24, 1))];
    let top1 = vec![(q(-3, 1), q(18, 1)), (q(-1, 1), q(24, 1))];
    let top2 = vec![(q(-3, 1), q(18, 1)), (q(-2, 1), q(35, 2)), (q(0, 1), q(51, 2)), (q(7, 2), q(1, 1)), (q(6, 1), q(0, 1))];
    let rot = |s: &Vec<(Q, Q)>| Sheet::new(s.iter().rev().map(|(x, t)| (-x, -t)).collect());
    Front::Pl(PlFront {
        sheets: vec![
            Sheet::new(top0.clone()),
            Sheet::new(top1.clone()),
            Sheet::new(top2.clone()),
            rot(&top2),
            rot(&top1),
            rot(&top0),
        ],
        cusps: vec![left(0, 3), right(0, 1), left(1, 2), right(2, 5), left(4, 5), right(3, 4)],
        potentials: vec![],
    })
}

/// Unknot with a single zigzag: it has no integer Maslov potential.
pub fn zigzag_stabilized() -> Front {
    let top0 = vec![(q(-6, 1), q(0, 1)), (q(-2, 1), q(30, 1)), (q(-1, 1), q(24, 1))];
    let top1 = vec![(q(-3, 1), q(18, 1)), (q(-1, 1), q(24, 1))];
    let top2 = vec![(q(-3, 1), q(18, 1)), (q(-2, 1), q(35, 2)), (q(0, 1), q(51, 2)), (q(7, 2), q(1, 1)), (q(6, 1), q(0, 1))];
    Front::Pl(PlFront {
        sheets: vec![
            Sheet::new(top0),
            Sheet::new(top1),
            Sheet::new(top2),
            sheet_i(&[(-6, 0), (0, -20), (6, 0)]),
        ],
        cusps: vec![left(0, 3), right(0, 1), left(1, 2), right(2, 3)],
        potentials: vec![],
    })
}

fn as_pl(f: Front) -> PlFront {
    match f {
        Front::Pl(p) => p,
        Front::Point(_) => unreachable!(),
    }
}

/// Eye of half-width 2 and slopes 1 with its left cusp at `(-a, 0)`. Paired
/// with a skyscraper at `(0, 1)` it has a single bar `(1 - a, 1 + a]`
/// for `0 < a < 2`.
pub fn cusp_surrogate(a: Q) -> Front {
    Front::Pl(diamond(-a, q(0, 1), q(2, 1), q(1, 1)))
}

/// A single point at height 0.
pub fn single_point() -> Front {
    Front::Point(PointFront { points: vec![q(0, 1)], potentials: vec![0] })
}

fn graded<K: Field>(k: &K, dims: &[(i32, usize)]) -> Complex<K> {
    Complex::from_dims(k, &dims.iter().copied().collect::<BTreeMap<i32, usize>>())
}

/// `k_{[0,1)}` on the two-point front.
pub fn halfopen<K: Field>(k: &K) -> CellSheaf<K> {
    LegibleSheaf::new(point_pair()).region(RegionRef::Point(q(0, 1), q(1, 2)), graded(k, &[(0, 1)])).realize(k).expect("valid data")
}

/// `k_{[0,+inf)}` on the single point: singular support is fine but the
/// support is not compact.
pub fn halfplane<K: Field>(k: &K) -> CellSheaf<K> {
    LegibleSheaf::new(single_point()).region(RegionRef::Point(q(0, 1), q(1, 1)), graded(k, &[(0, 1)])).realize(k).expect("valid data")
}

/// Graded stalk `dims` on the region inside the unknot.
pub fn eye_with<K: Field>(k: &K, dims: &[(i32, usize)]) -> CellSheaf<K> {
    LegibleSheaf::new(unknot()).region(RegionRef::Point(q(0, 1), q(0, 1)), graded(k, dims)).realize(k).expect("valid data")
}

/// `k` inside any front whose sheet 0 bounds a single eye from above.
pub fn eye_on<K: Field>(k: &K, f: &Front) -> CellSheaf<K> {
    LegibleSheaf::new(f.clone()).region(RegionRef::Below { sheet: 0, piece: 0 }, graded(k, &[(0, 1)])).realize(k).expect("valid data")
}

/// `k` on the closed region bounded by the unknot minus its bottom arc.
pub fn eye<K: Field>(k: &K) -> CellSheaf<K> {
    eye_with(k, &[(0, 1)])
}

/// Microlocal rank 2.
pub fn eye2<K: Field>(k: &K) -> CellSheaf<K> {
    eye_with(k, &[(0, 2)])
}

/// Microstalk `k ⊕ k[-1]`.
pub fn impure<K: Field>(k: &K) -> CellSheaf<K> {
    eye_with(k, &[(0, 1), (1, 1)])
}

/// Eye sheaf of a diamond part, on the arrangement of the whole front.
fn part_eye<K: Field>(k: &K, part: &PlFront, whole: &Front) -> CellSheaf<K> {
    let s0 = &part.sheets[0].breakpoints;
    let centre = (s0[1].0.clone(), (&s0[0].1 + &s0[2].1) / q(2, 1));
    let own = LegibleSheaf::new(Front::Pl(part.clone()))
        .region(RegionRef::Point(centre.0, centre.1), graded(k, &[(0, 1)]))
        .realize(k)
        .expect("valid data");
    own.pullback(Arc::new(front_complex(&whole.clone().prepare().expect("valid front"))), &q(0, 1)).expect("the union refines each part")
}

fn link_sheaf<K: Field>(k: &K, parts: &[PlFront]) -> CellSheaf<K> {
    let whole = Front::Pl(union(parts));
    parts.iter().map(|p| part_eye(k, p, &whole)).reduce(|a, b| a.direct_sum(&b).expect("same complex")).expect("parts")
}

fn stacked_parts() -> Vec<PlFront> {
    vec![as_pl(unknot()), diamond(q(-5, 4), q(6, 1), q(3, 2), q(2, 1))]
}

fn split_parts() -> Vec<PlFront> {
    vec![as_pl(unknot()), diamond(q(2, 1), q(1, 2), q(1, 1), q(3, 1))]
}

fn clasp_parts() -> Vec<PlFront> {
    match clasp() {
        Front::Pl(p) => {
            let a = PlFront { sheets: p.sheets[..2].to_vec(), cusps: vec![left(0, 1), right(0, 1)], potentials: vec![] };
            let b = PlFront { sheets: p.sheets[2..].to_vec(), cusps: vec![left(0, 1), right(0, 1)], potentials: vec![] };
            vec![a, b]
        }
        Front::Point(_) => unreachable!(),
    }
}

/// Sum of the two eye sheaves on [`stacked_link`].
pub fn stacked_sum<K: Field>(k: &K) -> CellSheaf<K> {
    link_sheaf(k, &stacked_parts())
}

/// Sum of the two eye sheaves on [`split_link`].
pub fn split_sum<K: Field>(k: &K) -> CellSheaf<K> {
    link_sheaf(k, &split_parts())
}

/// Sum of the two eye sheaves on [`clasp`].
pub fn clasp_sum<K: Field>(k: &K) -> CellSheaf<K> {
    link_sheaf(k, &clasp_parts())
}

/// Microlocal rank one sheaf on [`trefoil`], microstalks in degree 0. The
/// region above the middle strands is `k[-1]`, the region below them `k`;
/// the lens between the first two crossings is `k ⊕ k[-1]` and the lens
/// between the last two is the acyclic complex `k -> k` in degrees 0, 1.
pub fn trefoil_sheaf<K: Field>(k: &K) -> CellSheaf<K> {
    use crate::exactalg::{ChainMap, Matrix};
    let top = graded(k, &[(1, 1)]);
    let bottom = graded(k, &[(0, 1)]);
    let split = graded(k, &[(0, 1), (1, 1)]);
    let acyclic = Complex::new(k, 0, vec![1, 1], vec![Matrix::identity(k, 1)]).expect("complex");
    let one = || Matrix::identity(k, 1);
    let map = |s: &Complex<K>, t: &Complex<K>, deg: i32| {
        ChainMap::new(s.clone(), t.clone(), [(deg, one())].into_iter().collect()).expect("chain map")
    };
    LegibleSheaf::new(trefoil())
        .region(RegionRef::Below { sheet: 0, piece: 0 }, top.clone())
        .region(RegionRef::Above { sheet: 3, piece: 0 }, bottom.clone())
        .region(RegionRef::Below { sheet: 2, piece: 1 }, split.clone())
        .region(RegionRef::Below { sheet: 1, piece: 2 }, acyclic.clone())
        .arc(2, 1, map(&top, &split, 1))
        .arc(1, 1, map(&split, &bottom, 0))
        .arc(1, 2, map(&top, &acyclic, 1))
        .arc(2, 2, map(&acyclic, &bottom, 0))
        .realize(k)
        .expect("valid data")
}
