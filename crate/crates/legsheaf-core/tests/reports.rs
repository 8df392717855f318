use legsheaf_core::cellsheaf::CellSheaf;
use legsheaf_core::corpus;
use legsheaf_core::fronts::Front;
use legsheaf_core::q::{q, qi};
use legsheaf_core::reports::*;
use legsheaf_core::PrimeField;

fn f2() -> PrimeField {
    PrimeField::f2()
}

fn corpus_pairs() -> Vec<(&'static str, Front, CellSheaf<PrimeField>)> {
    let k = f2();
    vec![
        ("point-pair", corpus::point_pair(), corpus::halfopen(&k)),
        ("unknot", corpus::unknot(), corpus::eye(&k)),
        ("unknot-rank-2", corpus::unknot(), corpus::eye2(&k)),
        ("unknot-impure", corpus::unknot(), corpus::impure(&k)),
        ("split", corpus::split_link(), corpus::split_sum(&k)),
        ("stacked", corpus::stacked_link(), corpus::stacked_sum(&k)),
        ("clasp", corpus::clasp(), corpus::clasp_sum(&k)),
        ("trefoil", corpus::trefoil(), corpus::trefoil_sheaf(&k)),
    ]
}

fn sides(r: &TheoremReport) -> Vec<(i64, i64)> {
    r.inequalities.iter().map(|i| (i.lhs, i.rhs)).collect()
}

#[test]
fn betti_bound_examples() {
    let k = f2();
    let r = betti_bound(&corpus::unknot(), &corpus::eye(&k));
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(sides(&r), vec![(1, 1), (1, 1), (2, 2)]);
    let r = betti_bound(&corpus::trefoil(), &corpus::trefoil_sheaf(&k));
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.inequalities.last().unwrap().lhs, 10);
    let r = betti_bound(&corpus::point_pair(), &corpus::halfopen(&k));
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(sides(&r), vec![(2, 2), (2, 2)]);
}

#[test]
fn non_compact_support_is_inapplicable() {
    let k = f2();
    let r = betti_bound(&corpus::single_point(), &corpus::halfplane(&k));
    assert_eq!(r.verdict, Verdict::Inapplicable);
    assert!(r.hypotheses.iter().any(|h| h.name == "support is compact" && !h.holds));
    // the inequality itself would fail: no chords but one point
    assert!(r.inequalities.iter().any(|i| !i.holds()));
    assert_eq!(morse_inequalities(&corpus::single_point(), &corpus::halfplane(&k)).verdict, Verdict::Inapplicable);
    assert_eq!(support_diagnostics(&corpus::single_point(), &corpus::halfplane(&k)).verdict, Verdict::Inapplicable);
}

#[test]
fn impure_sheaf_needs_the_mixed_inequality() {
    let k = f2();
    assert_eq!(betti_bound(&corpus::unknot(), &corpus::impure(&k)).verdict, Verdict::Inapplicable);
    let r = morse_inequalities(&corpus::unknot(), &corpus::impure(&k));
    assert_eq!(r.verdict, Verdict::Pass);
    // degreewise: weights {-1: 1, 0: 2, 1: 1} against the same Hom_+
    let degreewise: Vec<(i64, i64)> = r.inequalities.iter().filter(|i| i.label.starts_with("degree")).map(|i| (i.lhs, i.rhs)).collect();
    assert_eq!(degreewise, vec![(1, 1), (2, 2), (1, 1)]);
}

#[test]
fn morse_inequality_examples() {
    let k = f2();
    let r = morse_inequalities(&corpus::point_pair(), &corpus::halfopen(&k));
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(sides(&r), vec![(1, 1), (1, 1)]);
    let r = morse_inequalities(&corpus::unknot(), &corpus::eye(&k));
    assert_eq!(r.verdict, Verdict::Pass);
    assert!(r.inequalities.iter().all(|i| i.lhs == i.rhs));
    let r = morse_inequalities(&corpus::trefoil(), &corpus::trefoil_sheaf(&k));
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(sides(&r), vec![(2, 1), (1, 1), (2, 1), (3, 2)]);
}

#[test]
fn corpus_verdicts_are_recomputable_and_consistent() {
    for (name, f, s) in corpus_pairs() {
        let b = betti_bound(&f, &s);
        let m = morse_inequalities(&f, &s);
        for r in [&b, &m, &support_diagnostics(&f, &s)] {
            assert_eq!(r.verdict, r.recompute(), "{name} {}", r.theorem);
            assert_eq!(r.field, "F2");
        }
        assert_eq!(m.verdict, Verdict::Pass, "{name}: {:?}", m.inequalities);
        if b.verdict != Verdict::Inapplicable {
            assert_eq!(b.verdict, m.verdict, "{name}");
        }
    }
}

#[test]
fn zero_sheaf_fails_the_hypotheses() {
    let k = f2();
    let e = corpus::eye(&k);
    let zero = CellSheaf::zero(e.complex.clone(), &k);
    let r = support_diagnostics(&corpus::unknot(), &zero);
    assert_eq!(r.verdict, Verdict::Inapplicable);
    assert!(r.hypotheses.iter().any(|h| h.name == "support is compact" && h.holds));
    assert!(r.hypotheses.iter().any(|h| h.name.starts_with("microstalk") && !h.holds));
    assert_eq!(support_diagnostics(&corpus::unknot(), &e).verdict, Verdict::Pass);
}

#[test]
fn tampered_report_recomputes_differently() {
    let k = f2();
    let mut r = betti_bound(&corpus::unknot(), &corpus::eye(&k));
    r.inequalities[0].lhs = 0;
    assert_eq!(r.recompute(), Verdict::Fail);
    r.hypotheses[0].holds = false;
    assert_eq!(r.recompute(), Verdict::Inapplicable);
}

#[test]
fn displacement_of_point_pair() {
    let k = f2();
    let f = corpus::point_pair();
    let s = corpus::halfopen(&k);
    let c = q(1, 4);
    let g = f.translated(&c);
    let r = displacement_bound(&f, &s, &g, Some(&s.translate(&c)), &q(1, 2));
    assert_eq!(r.verdict, Verdict::Pass);
    // all four height differences are mixed chords
    assert_eq!(r.inequalities[0].lhs, 4);
    assert_eq!(r.inequalities[0].rhs, 2);
    let survival = &r.inequalities[1];
    assert!(survival.rhs <= survival.lhs);
}

#[test]
fn displacement_of_unknot() {
    let k = f2();
    let u = corpus::unknot();
    // slopes change from 1 to 9/8 so no pieces are parallel
    let g = Front::Pl(corpus::diamond(q(-7, 8), q(1, 8), qi(1), q(9, 8)));
    let r = displacement_bound(&u, &corpus::eye(&k), &g, Some(&corpus::eye_on(&k, &g)), &q(1, 2));
    assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
    assert_eq!(r.inequalities[0].rhs, 2);
    assert!(r.inequalities[0].lhs >= 2);
    // a pure vertical shift leaves parallel pieces and cusps over one x
    let shifted = u.translated(&q(1, 4));
    let r = displacement_bound(&u, &corpus::eye(&k), &shifted, None, &q(1, 2));
    assert_eq!(r.verdict, Verdict::Inapplicable);
    assert!(r.hypotheses.iter().any(|h| h.name.contains("isolated") && !h.holds));
}

#[test]
fn displacement_beyond_every_chord_is_vacuous() {
    let k = f2();
    let u = corpus::unknot();
    let g = Front::Pl(corpus::diamond(q(-7, 8), q(1, 8), qi(1), q(9, 8)));
    let r = displacement_bound(&u, &corpus::eye(&k), &g, None, &qi(5));
    assert!(r.diagnostics.iter().any(|d| d.contains("vacuous")));
    assert!(r.inequalities.is_empty());
}
