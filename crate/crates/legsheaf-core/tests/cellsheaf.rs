use std::collections::BTreeMap;
use std::sync::Arc;

use legsheaf_core::cellsheaf::*;
use legsheaf_core::corpus;
use legsheaf_core::exactalg::{ChainMap, Complex, Dims};
use legsheaf_core::fronts::{Front, PlFront};
use legsheaf_core::homengine::global_sections;
use legsheaf_core::q::{q, qi, Q};
use legsheaf_core::PrimeField;
use proptest::prelude::*;

fn f2() -> PrimeField {
    PrimeField::f2()
}

/// `k` on the cells of a line complex whose sample height satisfies `keep`,
/// identity maps inside the support.
fn line_sheaf(cx: Arc<CellComplex>, keep: impl Fn(&Q, bool) -> bool) -> CellSheaf<PrimeField> {
    let k = f2();
    let stalks: Vec<Complex<PrimeField>> = cx
        .cells
        .iter()
        .map(|c| if keep(&c.t, c.dim == 0) { Complex::concentrated(&k, 0, 1) } else { Complex::zero(&k) })
        .collect();
    let mut maps = BTreeMap::new();
    for s in 0..cx.len() {
        for &t in cx.up(s) {
            if !stalks[s].is_zero() && !stalks[t].is_zero() {
                maps.insert((s, t), ChainMap::identity(&stalks[s]));
            }
        }
    }
    CellSheaf::new(cx, &k, stalks, maps).unwrap()
}

fn point_complex() -> Arc<CellComplex> {
    Arc::new(front_complex(&corpus::point_pair().prepare().unwrap()))
}

/// `k_{(0,1]}`, `k_{[0,1)}` and `k_{[0,1]}` on the two-point complex.
fn open_closed() -> CellSheaf<PrimeField> {
    line_sheaf(point_complex(), |t, _| *t > qi(0) && *t <= qi(1))
}

fn closed_open() -> CellSheaf<PrimeField> {
    line_sheaf(point_complex(), |t, _| *t >= qi(0) && *t < qi(1))
}

fn closed() -> CellSheaf<PrimeField> {
    line_sheaf(point_complex(), |t, _| *t >= qi(0) && *t <= qi(1))
}

fn stalk_cohomology(s: &CellSheaf<PrimeField>) -> Vec<Dims> {
    s.stalks().iter().map(|c| c.cohomology()).collect()
}

fn pl(f: Front) -> PlFront {
    match f {
        Front::Pl(p) => p,
        Front::Point(_) => unreachable!(),
    }
}

/// Proper crossings between segments of two sets of sheets, by brute force.
fn segment_crossings(a: &PlFront, b: &PlFront) -> usize {
    let segs = |f: &PlFront| -> Vec<((Q, Q), (Q, Q))> {
        f.sheets.iter().flat_map(|s| s.breakpoints.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect::<Vec<_>>()).collect()
    };
    let cross = |p: &(Q, Q), r: &(Q, Q), s: &(Q, Q)| (&r.0 - &p.0) * (&s.1 - &p.1) - (&r.1 - &p.1) * (&s.0 - &p.0);
    let sgn = |x: Q| if x > qi(0) { 1 } else if x < qi(0) { -1 } else { 0 };
    let mut n = 0;
    for (p1, p2) in segs(a) {
        for (r1, r2) in segs(b) {
            let d1 = sgn(cross(&p1, &p2, &r1));
            let d2 = sgn(cross(&p1, &p2, &r2));
            let d3 = sgn(cross(&r1, &r2, &p1));
            let d4 = sgn(cross(&r1, &r2, &p2));
            if d1 * d2 < 0 && d3 * d4 < 0 {
                n += 1;
            }
        }
    }
    n
}

#[test]
fn point_front_complex_has_two_points_and_three_intervals() {
    let cx = point_complex();
    assert_eq!(cx.len(), 5);
    assert_eq!(cx.cells.iter().filter(|c| c.dim == 0).count(), 2);
    assert_eq!(cx.cells.iter().filter(|c| c.dim == 1).count(), 3);
    assert_eq!(cx.cells.iter().filter(|c| !c.bounded).count(), 2);
    for (i, c) in cx.cells.iter().enumerate() {
        for &j in cx.up(i) {
            assert!(cx.cells[j].dim > c.dim);
        }
    }
}

#[test]
fn unknot_overlay_crossings_match_segment_count() {
    let u = corpus::unknot();
    let cx = arrange(&[u.clone(), u.clone()], &[qi(0), qi(1)]).unwrap();
    let moved = pl(u.translated(&qi(1)));
    let expected = segment_crossings(&pl(u), &moved);
    assert_eq!(expected, 2);
    assert_eq!(cx.crossings_between(0, 1), expected);
}

#[test]
fn overlay_at_a_chord_length_is_rejected() {
    let u = corpus::unknot();
    let e = arrange(&[u.clone(), u.clone()], &[qi(0), qi(2)]).unwrap_err();
    assert_eq!(e.u, Some(qi(2)));
    assert!(arrange(&[corpus::point_pair(), corpus::point_pair()], &[qi(0), qi(1)]).is_err());
}

#[test]
fn eye_sheaf_is_valid() {
    let k = f2();
    let r = check_ss(&corpus::eye(&k), &corpus::unknot());
    assert!(r.is_valid(), "{:?}", r.violations);
    for s in [corpus::eye2(&k), corpus::impure(&k)] {
        assert!(check_ss(&s, &corpus::unknot()).is_valid());
    }
    assert!(check_ss(&corpus::halfopen(&k), &corpus::point_pair()).is_valid());
}

#[test]
fn constant_sheaf_is_not_compactly_supported() {
    let k = f2();
    let u = corpus::unknot();
    let s = CellSheaf::constant(Arc::new(front_complex(&u.clone().prepare().unwrap())), &k);
    let r = check_ss(&s, &u);
    assert!(r.has(SsViolationKind::NonCompact));
    assert!(r.is_locally_valid());
}

#[test]
fn crossing_square_with_zero_corners_is_invalid() {
    // Around the crossing at x = -1 of the clasp, the region left of the
    // crossing lies outside both eyes and the region right of it inside both.
    let k = f2();
    let s = LegibleSheaf::new(corpus::clasp())
        .region(RegionRef::Point(q(-1, 2), q(-1, 2)), Complex::concentrated(&k, 0, 1))
        .region(RegionRef::Point(qi(-5), qi(0)), Complex::concentrated(&k, 0, 1))
        .realize(&k)
        .unwrap();
    let r = check_ss(&s, &corpus::clasp());
    assert!(r.has(SsViolationKind::Crossing), "{:?}", r.violations);
}

#[test]
fn microstalks() {
    let k = f2();
    let u = corpus::unknot();
    let bottom = FrontPoint { sheet: 1, x: q(1, 2) };
    assert_eq!(microstalk(&corpus::eye(&k), &u, &bottom).unwrap().cohomology(), Dims::from([(0, 1)]));
    let top = FrontPoint { sheet: 0, x: q(-1, 2) };
    assert_eq!(microstalk(&corpus::eye(&k), &u, &top).unwrap().cohomology(), Dims::from([(0, 1)]));
    let zero = CellSheaf::zero(corpus::eye(&k).complex.clone(), &k);
    assert!(microstalk(&zero, &u, &bottom).unwrap().cohomology().is_empty());
    assert!(microstalk(&corpus::eye(&k), &u, &FrontPoint { sheet: 0, x: qi(0) }).is_err());
}

#[test]
fn microlocal_ranks() {
    let k = f2();
    let u = corpus::unknot();
    let r = microlocal_rank(&corpus::eye(&k), &u).unwrap();
    assert_eq!((r.rank, r.pure), (Some(1), true));
    let sum = corpus::eye(&k).direct_sum(&corpus::eye(&k)).unwrap();
    assert_eq!(microlocal_rank(&sum, &u).unwrap().rank, Some(2));
    let r = microlocal_rank(&corpus::halfopen(&k), &corpus::point_pair()).unwrap();
    assert_eq!((r.rank, r.pure), (Some(1), true));
    let r = microlocal_rank(&corpus::impure(&k), &u).unwrap();
    assert!(!r.pure);
    assert_eq!(r.dims(), Some(&Dims::from([(0, 1), (1, 1)])));
}

#[test]
fn dual_of_half_open_interval_swaps_the_closed_end() {
    let d = dual(&open_closed()).sheaf;
    assert_eq!(stalk_cohomology(&d), stalk_cohomology(&closed_open()));
    let d = dual(&closed_open()).sheaf;
    assert_eq!(stalk_cohomology(&d), stalk_cohomology(&open_closed()));
    let zero = CellSheaf::zero(point_complex(), &f2());
    assert!(stalk_cohomology(&dual(&zero).sheaf).iter().all(|d| d.is_empty()));
}

#[test]
fn dual_of_closed_ray_is_open_ray() {
    // RHom(k_Z, k) is k on the interior of a closed half-line Z.
    let k = f2();
    let s = corpus::halfplane(&k);
    let d = dual(&s).sheaf;
    for (i, c) in s.complex.cells.iter().enumerate() {
        let expected = if c.t > qi(0) { 1 } else { 0 };
        assert_eq!(d.stalk(i).cohomology().values().sum::<usize>(), expected, "cell {i}");
    }
}

#[test]
fn double_dual_preserves_global_sections() {
    let k = f2();
    for s in [open_closed(), closed_open(), closed(), corpus::eye(&k), corpus::impure(&k)] {
        let dd = dual(&dual(&s).sheaf).sheaf;
        assert_eq!(global_sections(&dd).cohomology(), global_sections(&s).cohomology());
    }
}

#[test]
fn tensor_unit_and_idempotent_interval() {
    let k = f2();
    let e = corpus::eye(&k);
    let one = CellSheaf::constant(e.complex.clone(), &k);
    assert_eq!(e.tensor(&one).unwrap().stalk_dims(), e.stalk_dims());
    let a = open_closed();
    assert_eq!(a.tensor(&a).unwrap().stalk_dims(), a.stalk_dims());
    assert!(a.tensor(&corpus::eye(&k)).is_err());
}

#[test]
fn translation() {
    let k = f2();
    let s = corpus::halfopen(&k);
    let z = s.translate(&qi(0));
    assert_eq!(*z.complex, *s.complex);
    assert_eq!(z.stalk_dims(), s.stalk_dims());
    let t = s.translate(&qi(1));
    let at = |u: &CellSheaf<PrimeField>, h: Q| u.stalk(u.complex.locate(&qi(0), &h)).total_dim();
    assert_eq!(at(&t, q(3, 2)), 1);
    assert_eq!(at(&t, qi(1)), 1);
    assert_eq!(at(&t, q(1, 2)), 0);
    assert_eq!(at(&t, qi(2)), 0);
    let m = microlocal_rank(&corpus::eye(&k).translate(&q(3, 7)), &corpus::unknot().translated(&q(3, 7))).unwrap();
    assert_eq!(m.rank, Some(1));
}

#[test]
fn sections_survive_refinement() {
    let k = f2();
    let u = corpus::unknot();
    let far = Front::Pl(corpus::diamond(q(-1, 2), qi(20), qi(2), qi(1)));
    let fine = Arc::new(arrange(&[u.clone(), far], &[qi(0), qi(0)]).unwrap());
    let e = corpus::eye(&k);
    let p = e.pullback(fine.clone(), &qi(0)).unwrap();
    assert!(fine.len() > e.complex.len());
    assert_eq!(global_sections(&p).cohomology(), global_sections(&e).cohomology());
}

#[test]
fn propagation_on_half_line_pattern() {
    let k = f2();
    let s = corpus::halfplane(&k);
    let id = s.propagate(&qi(0), &qi(3), &qi(1)).unwrap();
    assert!(id.is_identity());
    let to_zero = s.propagate(&qi(0), &q(1, 2), &qi(1)).unwrap();
    assert!(to_zero.target().is_zero());
}

#[test]
fn propagation_map_is_natural() {
    let k = f2();
    let u = corpus::unknot();
    for c in [q(1, 2), qi(1), qi(3)] {
        let refined = Arc::new(arrange(&[u.clone(), u.clone()], &[qi(0), c.clone()]).unwrap());
        let m = propagation_map(&corpus::eye(&k), &c, refined).unwrap();
        assert!(m.naturality_failures().is_empty(), "c = {c}");
    }
    assert!(propagation_map(&corpus::eye(&k), &qi(0), corpus::eye(&k).complex.clone()).is_err());
}

fn off_lines(n: i64) -> Q {
    // x in (-1, 1) avoiding the breakpoint abscissae -1, 0, 1
    let x = q(2 * n + 1, 41);
    if x == qi(0) {
        q(1, 41)
    } else {
        x
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn propagation_composes(n in -20i64..20, t in -60i64..60, a in 1i64..40, b in 1i64..40) {
        let k = f2();
        let x = off_lines(n);
        let t = q(t, 20);
        let (a, b) = (q(a, 20), q(b, 20));
        for s in [corpus::eye(&k), corpus::impure(&k)] {
            let first = s.propagate(&x, &t, &a).unwrap();
            let second = s.propagate(&x, &(&t - &a), &b).unwrap();
            let whole = s.propagate(&x, &t, &(&a + &b)).unwrap();
            prop_assert_eq!(first.then(&second), whole);
        }
    }

    #[test]
    fn translate_moves_stalks(c in -30i64..30, t in -60i64..60) {
        let k = f2();
        let s = corpus::eye(&k);
        let c = q(c, 10);
        let t = q(t, 20);
        let moved = s.translate(&c);
        let x = q(1, 3);
        let here = moved.stalk(moved.complex.locate(&x, &(&t + &c))).dims();
        let there = s.stalk(s.complex.locate(&x, &t)).dims();
        prop_assert_eq!(here, there);
    }
}
