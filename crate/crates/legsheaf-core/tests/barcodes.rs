use legsheaf_core::barcodes::*;
use legsheaf_core::q::{q, qi, Ext, Q};
use proptest::prelude::*;

fn bar(d: i32, a: i64, b: i64) -> Bar {
    Bar::finite(d, qi(a), qi(b))
}

fn code(bars: &[Bar]) -> Barcode {
    Barcode::new(bars.iter().cloned())
}

fn point_example() -> Barcode {
    code(&[bar(1, -1, 0), bar(0, 0, 1)])
}

#[test]
fn dimension_function_examples() {
    let b = code(&[bar(0, 0, 1)]);
    assert_eq!(dimension_function(&b, 0, &qi(1)), 1);
    assert_eq!(dimension_function(&b, 0, &qi(0)), 0);
    assert_eq!(dimension_function(&point_example(), 1, &q(-1, 2)), 1);
    assert_eq!(dimension_function(&Barcode::empty(), 0, &qi(7)), 0);
}

#[test]
fn bars_must_be_nonempty() {
    assert!(Bar::new(0, Ext::Fin(qi(1)), Ext::Fin(qi(1)), 1).is_err());
    assert!(Bar::new(0, Ext::Fin(qi(0)), Ext::Fin(qi(1)), 0).is_err());
    assert!(Bar::new(0, Ext::NegInf, Ext::PosInf, 2).is_ok());
}

#[test]
fn reconstruction_examples() {
    let ri = RankInvariant {
        critical: vec![qi(0), qi(1)],
        samples: vec![qi(-1), q(1, 2), qi(2)],
        stalk_dims: vec![Default::default(), [(3, 1)].into_iter().collect(), Default::default()],
        structure_ranks: vec![Default::default(), Default::default()],
        span_ranks: Default::default(),
    };
    assert_eq!(barcode_from_rank_invariant(&ri).unwrap(), code(&[bar(3, 0, 1)]));

    let zero = RankInvariant { stalk_dims: vec![Default::default(); 3], ..ri.clone() };
    assert!(barcode_from_rank_invariant(&zero).unwrap().is_empty());

    let ri = rank_invariant_of(&point_example());
    assert_eq!(barcode_from_rank_invariant(&ri).unwrap(), point_example());

    // two isomorphisms composing to zero
    let mut bad = rank_invariant_of(&code(&[bar(0, 0, 1), bar(0, 1, 2), bar(0, 2, 3)]));
    let one: legsheaf_core::exactalg::Dims = [(0, 1)].into_iter().collect();
    for k in 1..3 {
        bad.span_ranks.insert((k, k + 1), one.clone());
        bad.structure_ranks[k] = one.clone();
    }
    assert!(matches!(barcode_from_rank_invariant(&bad), Err(RankError::Inconsistent { degree: 0, .. })));
}

#[test]
fn shift_examples() {
    let b = code(&[bar(0, 0, 1)]);
    assert_eq!(shift(&b, &qi(0)), b);
    assert_eq!(shift(&b, &qi(1)), code(&[bar(0, -1, 0)]));
}

#[test]
fn interleaving_examples() {
    let b1 = code(&[bar(0, 1, 3)]);
    let b2 = code(&[bar(0, 0, 2)]);
    assert!(interleaving_check(&b1, &b1, &qi(0), &qi(0)));
    assert!(interleaving_check(&b1, &b2, &q(1, 10), &q(11, 10)));
    assert!(!interleaving_check(&b1, &b2, &q(1, 10), &q(1, 2)));
    assert_eq!(interleaving_distance(&b1, &b1), Ext::Fin(qi(0)));
    assert_eq!(interleaving_distance(&b1, &b2), Ext::Fin(qi(1)));
    assert_eq!(interleaving_distance(&code(&[bar(0, 1, 2)]), &code(&[bar(0, 0, 3)])), Ext::Fin(qi(2)));
}

#[test]
fn infinite_bars() {
    let a = Barcode::new([Bar::new(0, Ext::Fin(qi(0)), Ext::PosInf, 1).unwrap()]);
    let b = Barcode::new([Bar::new(0, Ext::Fin(qi(1)), Ext::PosInf, 1).unwrap()]);
    assert_eq!(interleaving_distance(&a, &b), Ext::Fin(qi(1)));
    assert_eq!(interleaving_distance(&a, &Barcode::empty()), Ext::PosInf);
}

#[test]
fn tsv_round_trip() {
    let b = Barcode::new([
        Bar::new(1, Ext::NegInf, Ext::Fin(q(1, 3)), 2).unwrap(),
        bar(0, 0, 1),
        Bar::new(2, Ext::Fin(qi(-1)), Ext::PosInf, 1).unwrap(),
    ]);
    let t = to_tsv(&b);
    assert_eq!(t, "0\t0\t1\t1\n1\t-inf\t1/3\t2\n2\t-1\t+inf\t1\n");
    assert_eq!(parse_tsv(&t).unwrap(), b);
    assert_eq!(to_tsv(&point_example()), "0\t0\t1\t1\n1\t-1\t0\t1\n");
    assert_eq!(parse_tsv("0\t1\t1\t1").unwrap_err().line, 1);
    let svg = to_svg(&b);
    assert!(svg.starts_with("<svg"));
    let bytes = svg.as_bytes();
    assert!(bytes.windows(3).all(|w| !(w[0].is_ascii_digit() && w[1] == b'.' && w[2].is_ascii_digit())));
}

fn arb_q() -> impl Strategy<Value = Q> {
    (-12i64..=12, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

fn arb_bar() -> impl Strategy<Value = Bar> {
    (0i32..2, arb_q(), arb_q(), 1usize..3).prop_filter_map("empty", |(d, a, b, m)| {
        if a < b {
            Some(Bar::new(d, Ext::Fin(a), Ext::Fin(b), m).unwrap())
        } else {
            None
        }
    })
}

fn arb_code(n: usize) -> impl Strategy<Value = Barcode> {
    proptest::collection::vec(arb_bar(), 0..=n).prop_map(Barcode::new)
}

/// Four distinct endpoints drawn from a small grid.
fn arb_four() -> impl Strategy<Value = [Q; 4]> {
    proptest::collection::btree_set(-20i64..=20, 4).prop_map(|s| {
        let v: Vec<Q> = s.into_iter().map(|x| q(x, 2)).collect();
        [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn round_trip(b in arb_code(6)) {
        let ri = rank_invariant_of(&b);
        prop_assert_eq!(barcode_from_rank_invariant(&ri).unwrap(), b);
    }

    #[test]
    fn staircase_formula(v in arb_four()) {
        // a1 < a0 < b1 < b0
        let (a1, a0, b1, b0) = (v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone());
        let m = Barcode::new([Bar::finite(0, a0.clone(), b0.clone())]);
        let n = Barcode::new([Bar::finite(0, a1.clone(), b1.clone())]);
        let want = (&a0 - &a1).max(&b0 - &b1);
        prop_assert_eq!(interleaving_distance(&m, &n), Ext::Fin(want));
    }

    #[test]
    fn nested_formula(v in arb_four()) {
        // a1 < a0 < b0 < b1
        let (a1, a0, b0, b1) = (v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone());
        let m = Barcode::new([Bar::finite(0, a0.clone(), b0.clone())]);
        let n = Barcode::new([Bar::finite(0, a1.clone(), b1.clone())]);
        let want = (&a0 - &a1) + (&b1 - &b0);
        prop_assert_eq!(interleaving_distance(&m, &n), Ext::Fin(want));
    }

    #[test]
    fn shift_is_close(b in arb_code(4), c in (0i64..8).prop_map(|x| q(x, 2))) {
        let s = shift(&b, &c);
        prop_assert!(interleaving_check(&b, &s, &qi(0), &c));
        prop_assert!(interleaving_distance(&b, &s) <= Ext::Fin(c));
    }

    #[test]
    fn monotone(b1 in arb_code(3), b2 in arb_code(3), e in arb_q(), f in arb_q(), d in arb_q()) {
        let (e, f, d) = (e.abs(), f.abs(), d.abs());
        if interleaving_check(&b1, &b2, &e, &f) {
            prop_assert!(interleaving_check(&b1, &b2, &(&e + &d), &f));
            prop_assert!(interleaving_check(&b1, &b2, &e, &(&f + &d)));
        }
    }

    #[test]
    fn triangle(b1 in arb_code(2), b2 in arb_code(2), b3 in arb_code(2)) {
        let d13 = interleaving_distance(&b1, &b3);
        let (d12, d23) = (interleaving_distance(&b1, &b2), interleaving_distance(&b2, &b3));
        if let (Ext::Fin(x), Ext::Fin(y)) = (d12, d23) {
            prop_assert!(d13 <= Ext::Fin(x + y));
        }
    }
}

use num_traits::Signed;
