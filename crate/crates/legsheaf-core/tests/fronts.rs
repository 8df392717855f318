use std::collections::BTreeMap;

use legsheaf_core::corpus;
use legsheaf_core::fronts::*;
use legsheaf_core::q::{q, Ext, Q};
use proptest::prelude::*;

fn pl(f: &Front) -> &PlFront {
    match f {
        Front::Pl(p) => p,
        _ => panic!("not a PL front"),
    }
}

fn sheet(pts: &[(i64, i64)]) -> Sheet {
    Sheet::new(pts.iter().map(|&(x, t)| (q(x, 1), q(t, 1))).collect())
}

#[test]
fn corpus_fronts_validate() {
    for (name, f) in [
        ("point-pair", corpus::point_pair()),
        ("unknot", corpus::unknot()),
        ("trefoil", corpus::trefoil()),
        ("stacked", corpus::stacked_link()),
        ("split", corpus::split_link()),
        ("clasp", corpus::clasp()),
        ("zigzag", corpus::zigzag_unknot()),
        ("surrogate", corpus::cusp_surrogate(q(1, 2))),
    ] {
        let r = f.validate();
        assert!(r.is_valid(), "{name}: {:?}", r.violations);
    }
}

#[test]
fn single_zigzag_has_no_potential() {
    let r = corpus::zigzag_stabilized().validate();
    assert!(r.has(ViolationKind::Potential));
}

#[test]
fn parallel_segments_are_rejected() {
    let f = Front::Pl(PlFront {
        sheets: vec![sheet(&[(-2, 0), (0, 2), (2, 0)]), sheet(&[(-2, 0), (0, -2), (2, 0)]), sheet(&[(-1, 3), (1, 5), (3, 3)]), sheet(&[(-1, 3), (1, 1), (3, 3)])],
        cusps: vec![
            Cusp { kind: CuspKind::Left, sheets: (0, 1) },
            Cusp { kind: CuspKind::Right, sheets: (0, 1) },
            Cusp { kind: CuspKind::Left, sheets: (2, 3) },
            Cusp { kind: CuspKind::Right, sheets: (2, 3) },
        ],
        potentials: vec![],
    });
    assert!(f.validate().has(ViolationKind::ParallelSegments));
}

#[test]
fn breakpoint_coincidence_is_rejected() {
    // the second eye's top touches the first eye's apex
    let f = Front::Pl(PlFront {
        sheets: vec![sheet(&[(-1, 0), (0, 1), (1, 0)]), sheet(&[(-1, 0), (0, -1), (1, 0)]), sheet(&[(-2, -1), (0, 1), (2, -1)]), sheet(&[(-2, -1), (0, -7), (2, -1)])],
        cusps: vec![
            Cusp { kind: CuspKind::Left, sheets: (0, 1) },
            Cusp { kind: CuspKind::Right, sheets: (0, 1) },
            Cusp { kind: CuspKind::Left, sheets: (2, 3) },
            Cusp { kind: CuspKind::Right, sheets: (2, 3) },
        ],
        potentials: vec![],
    });
    assert!(f.validate().has(ViolationKind::NonGeneric));
}

#[test]
fn unsorted_points_are_rejected() {
    let f = Front::Point(PointFront { points: vec![q(1, 1), q(0, 1)], potentials: vec![] });
    assert!(f.validate().has(ViolationKind::Monotonicity));
}

#[test]
fn cusp_window_violation_is_rejected() {
    // a flat sheet running through the unknot's left cusp region
    let mut f = pl(&corpus::unknot()).clone();
    let mut g = pl(&Front::Pl(corpus::diamond(q(-3, 1), q(1, 4), q(3, 1), q(1, 12)))).clone();
    let off = f.sheets.len();
    f.sheets.append(&mut g.sheets);
    f.cusps.extend(g.cusps.iter().map(|c| Cusp { kind: c.kind, sheets: (c.sheets.0 + off, c.sheets.1 + off) }));
    let r = Front::Pl(f).validate();
    assert!(r.has(ViolationKind::CuspWindow), "{:?}", r.violations);
}

#[test]
fn unknot_chord() {
    let c = enumerate_chords(&corpus::unknot()).unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!(c[0].x, q(0, 1));
    assert_eq!(c[0].length, q(2, 1));
    assert_eq!(c[0].degree, 0);
    assert_eq!(c[0].index, 1);
}

#[test]
fn unknot_potential_is_normalized() {
    let f = corpus::unknot().prepare().unwrap();
    assert_eq!(f.potentials(), &[-1, 0]);
    // the conventional choice with the upper strand one higher
    let mut g = pl(&corpus::unknot()).clone();
    g.potentials = vec![1, 0];
    let g = Front::Pl(g).prepare().unwrap();
    assert_eq!(g.potentials(), &[-1, 0]);
}

#[test]
fn point_pair_chord() {
    let c = enumerate_chords(&corpus::point_pair()).unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!(c[0].length, q(1, 1));
    assert_eq!(c[0].degree, 0);
}

#[test]
fn trefoil_has_five_chords() {
    let f = corpus::trefoil();
    let c = enumerate_chords(&f).unwrap();
    assert_eq!(c.len(), 5);
    let degs: Vec<i32> = c.iter().map(|c| c.degree).collect();
    let counts = chord_counts(&c);
    assert_eq!(counts.get(&0), Some(&2), "{degs:?}");
    assert_eq!(counts.get(&1), Some(&3), "{degs:?}");
    assert_eq!(f.betti(), vec![1, 1]);
}

#[test]
fn zigzag_chords_come_in_cancelling_degrees() {
    let c = enumerate_chords(&corpus::zigzag_unknot()).unwrap();
    assert_eq!(c.len(), 7);
}

#[test]
fn link_chords() {
    assert_eq!(enumerate_chords(&corpus::split_link()).unwrap().len(), 2);
    let stacked = enumerate_chords(&corpus::stacked_link()).unwrap();
    // one chord per eye plus one for each of the four sheet pairs across the link
    assert_eq!(stacked.len(), 6);
    let clasp = enumerate_chords(&corpus::clasp()).unwrap();
    assert_eq!(clasp.len(), 4);
}

#[test]
fn min_lengths_of_unknot() {
    let f = corpus::unknot();
    let c = enumerate_chords(&f).unwrap();
    let m = min_chord_lengths(&f, &c);
    assert_eq!(m.get(&0), Some(&Ext::Fin(q(2, 1))));
    assert_eq!(m.get(&1), Some(&Ext::Fin(q(2, 1))));
    assert_eq!(m.len(), 2);
    let t = corpus::trefoil();
    let m = min_chord_lengths(&t, &enumerate_chords(&t).unwrap());
    assert!(m.values().all(Ext::is_finite));
}

fn degree_multiset(f: &Front) -> BTreeMap<(Q, i32), usize> {
    let mut m = BTreeMap::new();
    for c in enumerate_chords(f).unwrap() {
        *m.entry((c.length, c.degree)).or_insert(0) += 1;
    }
    m
}

#[test]
fn degrees_survive_translation_and_reflection() {
    for f in [corpus::point_pair(), corpus::unknot(), corpus::trefoil(), corpus::clasp(), corpus::stacked_link()] {
        let base = degree_multiset(&f);
        assert_eq!(degree_multiset(&f.translated(&q(7, 3))), base);
        assert_eq!(degree_multiset(&f.negated()), base);
    }
}

#[test]
fn mixed_chords_of_point_fronts_count_all_pairs() {
    let f = corpus::point_pair();
    let a = mixed_chords(&f, &f);
    let mut v: Vec<Q> = a.chords.iter().map(|c| c.u.clone()).collect();
    v.sort();
    assert_eq!(v, vec![q(-1, 1), q(0, 1), q(0, 1), q(1, 1)]);
    assert_eq!(a.chord_values(), vec![q(-1, 1), q(0, 1), q(1, 1)]);
}

// chords of a two-sheet front are the sign changes of the slope gap
fn brute_count(a: &[(i64, i64)], b: &[(i64, i64)]) -> usize {
    let xs: Vec<i64> = a.iter().map(|p| p.0).collect();
    let val = |s: &[(i64, i64)], x: f64| {
        for w in s.windows(2) {
            let (x0, t0, x1, t1) = (w[0].0 as f64, w[0].1 as f64, w[1].0 as f64, w[1].1 as f64);
            if x0 <= x && x <= x1 {
                return t0 + (x - x0) * (t1 - t0) / (x1 - x0);
            }
        }
        unreachable!()
    };
    let gap = |x: f64| val(a, x) - val(b, x);
    let mut n = 0;
    for w in xs.windows(3) {
        let (l, m, r) = (w[0] as f64, w[1] as f64, w[2] as f64);
        let sl = gap(m) - gap((l + m) / 2.0);
        let sr = gap((m + r) / 2.0) - gap(m);
        if (sl > 0.0) != (sr > 0.0) {
            n += 1;
        }
    }
    n
}

proptest! {
    #[test]
    fn eye_chords_match_slope_sign_changes(ups in prop::collection::vec(1i64..6, 3..7), downs in prop::collection::vec(1i64..6, 3..7)) {
        // random eyes with nested integer slopes, sharing breakpoints at 0..k
        let k = ups.len().min(downs.len());
        let mut top = vec![(0i64, 0i64)];
        let mut bot = vec![(0i64, 0i64)];
        let mut gap = 0i64;
        let mut t = 0i64;
        for i in 0..k - 1 {
            let g = ups[i] + downs[i];
            let pace = if i % 2 == 0 { g } else { g - (g / 2) };
            gap += pace;
            t += downs[i];
            top.push((i as i64 + 1, gap - t));
            bot.push((i as i64 + 1, -t));
        }
        // close at a right cusp with gap returning to zero
        let x_end = k as i64 + gap;
        top.push((x_end, -t - 1));
        bot.push((x_end, -t - 1));
        let f = Front::Pl(PlFront {
            sheets: vec![Sheet::new(top.iter().map(|&(x, t)| (q(x, 1), q(t, 1))).collect()), Sheet::new(bot.iter().map(|&(x, t)| (q(x, 1), q(t, 1))).collect())],
            cusps: vec![Cusp { kind: CuspKind::Left, sheets: (0, 1) }, Cusp { kind: CuspKind::Right, sheets: (0, 1) }],
            potentials: vec![],
        });
        prop_assume!(f.validate().is_valid());
        let mut xs: Vec<i64> = top.iter().map(|p| p.0).collect();
        xs.dedup();
        let expected = brute_count(&top, &bot);
        prop_assert_eq!(enumerate_chords(&f).unwrap().len(), expected);
    }
}
