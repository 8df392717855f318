use legsheaf_core::barcodes::{barcode_from_rank_invariant, interleaving_distance, to_tsv, Bar, Barcode};
use legsheaf_core::cellsheaf::CellSheaf;
use legsheaf_core::corpus;
use legsheaf_core::exactalg::Dims;
use legsheaf_core::fronts::{Front, PointFront};
use legsheaf_core::persistengine::*;
use legsheaf_core::q::{q, qi, Ext, Q};
use legsheaf_core::PrimeField;
use proptest::prelude::*;

fn f2() -> PrimeField {
    PrimeField::f2()
}

fn dims(pairs: &[(i32, usize)]) -> Dims {
    pairs.iter().copied().collect()
}

fn point_problem() -> PersistenceProblem<PrimeField> {
    PersistenceProblem::self_problem(&corpus::point_pair(), corpus::halfopen(&f2())).unwrap()
}

fn eye_problem(s: CellSheaf<PrimeField>) -> PersistenceProblem<PrimeField> {
    PersistenceProblem::self_problem(&corpus::unknot(), s).unwrap()
}

fn surrogate(a: Q) -> PersistenceProblem<PrimeField> {
    let f = corpus::cusp_surrogate(a);
    PersistenceProblem::skyscraper(qi(0), qi(1), &f, corpus::eye_on(&f2(), &f)).unwrap()
}

fn bar(d: i32, a: Q, b: Q) -> Bar {
    Bar::finite(d, a, b)
}

#[test]
fn critical_value_examples() {
    assert_eq!(critical_values(&point_problem()), vec![qi(-1), qi(0), qi(1)]);
    assert_eq!(critical_values(&eye_problem(corpus::eye(&f2()))), vec![qi(-2), qi(0), qi(2)]);
    let a = q(1, 2);
    let c = critical_values(&surrogate(a.clone()));
    assert!(c.contains(&(qi(1) - &a)) && c.contains(&(qi(1) + &a)));
}

#[test]
fn point_example_slices() {
    let p = point_problem();
    assert_eq!(slice(&p, &q(1, 2)).unwrap().cohomology(), dims(&[(0, 1)]));
    assert_eq!(slice(&p, &q(-1, 2)).unwrap().cohomology(), dims(&[(1, 1)]));
    assert!(slice(&p, &qi(2)).unwrap().cohomology().is_empty());
    assert!(matches!(slice(&p, &qi(0)), Err(PersistError::Critical(_))));
}

#[test]
fn point_example_rank_invariant_and_barcode() {
    let p = point_problem();
    let ri = rank_invariant(&p).unwrap();
    ri.validate().unwrap();
    assert!(ri.structure_ranks.iter().all(|r| r.values().all(|&v| v == 0)));
    let bc = barcode(&p).unwrap();
    assert_eq!(bc, Barcode::new([bar(1, qi(-1), qi(0)), bar(0, qi(0), qi(1))]));
    assert_eq!(to_tsv(&bc), "0\t0\t1\t1\n1\t-1\t0\t1\n");
}

#[test]
fn unknot_barcode() {
    let p = eye_problem(corpus::eye(&f2()));
    let ri = rank_invariant(&p).unwrap();
    assert!(ri.structure_ranks.iter().all(|r| r.values().all(|&v| v == 0)));
    let bc = barcode(&p).unwrap();
    assert_eq!(bc, Barcode::new([bar(0, qi(0), qi(2)), bar(2, qi(-2), qi(0))]));
}

#[test]
fn surrogate_birth_depends_on_sign() {
    let a = q(1, 2);
    let bc = barcode(&surrogate(a.clone())).unwrap();
    assert_eq!(bc, Barcode::new([bar(0, qi(1) - &a, qi(1) + &a)]));
    assert!(barcode(&surrogate(q(-1, 2))).unwrap().is_empty());
    assert!(barcode(&surrogate(qi(0))).unwrap().is_empty());
    let f = corpus::cusp_surrogate(qi(1));
    assert!(matches!(PersistenceProblem::skyscraper(qi(0), qi(1), &f, corpus::eye_on(&f2(), &f)), Err(PersistError::OnFront)));
}

#[test]
fn inferred_and_exhaustive_rank_invariants_agree() {
    let k = f2();
    let mut problems = vec![point_problem(), eye_problem(corpus::eye(&k)), eye_problem(corpus::eye2(&k)), eye_problem(corpus::impure(&k))];
    problems.push(PersistenceProblem::self_problem(&corpus::split_link(), corpus::split_sum(&k)).unwrap());
    for p in &problems {
        let a = rank_invariant(p).unwrap();
        let b = rank_invariant_exhaustive(p).unwrap();
        assert_eq!(a.stalk_dims, b.stalk_dims);
        assert_eq!(a.structure_ranks, b.structure_ranks);
        assert_eq!(barcode_from_rank_invariant(&a).unwrap(), barcode_from_rank_invariant(&b).unwrap());
    }
}

#[test]
fn endpoints_match_chords() {
    let k = f2();
    for p in [point_problem(), eye_problem(corpus::eye(&k)), eye_problem(corpus::impure(&k))] {
        let bc = barcode(&p).unwrap();
        let r = verify_endpoints(&p, &bc).unwrap();
        assert!(r.all_matched(), "{r:?}");
        let crit = critical_values(&p);
        assert!(bc.endpoints().iter().all(|e| crit.contains(e)));
    }
    let p = eye_problem(corpus::eye2(&k));
    let bc = barcode(&p).unwrap();
    assert!(bc.bars().iter().all(|b| b.mult == 4));
    let r = verify_endpoints(&p, &bc).unwrap();
    assert!(r.all_matched());
    assert_eq!(r.checks.iter().find(|c| c.u == qi(2)).unwrap().observed, dims(&[(0, 4)]));
}

#[test]
fn endpoint_mismatch_is_reported() {
    let p = eye_problem(corpus::eye(&f2()));
    let wrong = Barcode::new([bar(1, qi(0), qi(2)), bar(2, qi(-2), qi(0))]);
    let r = verify_endpoints(&p, &wrong).unwrap();
    assert!(!r.all_matched());
    let off = Barcode::new([bar(0, qi(0), qi(3))]);
    assert!(!verify_endpoints(&p, &off).unwrap().all_matched());
}

#[test]
fn jump_at_zero_is_cohomology_of_the_legendrian() {
    // bars ending at 0 in degree j + 1 and starting there in degree j
    // account for r^2 b_j
    let k = f2();
    let cases = [(point_problem(), 1usize, vec![2usize]), (eye_problem(corpus::eye(&k)), 1, vec![1, 1]), (eye_problem(corpus::eye2(&k)), 2, vec![1, 1])];
    for (p, r, betti) in cases {
        let bc = barcode(&p).unwrap();
        for (j, b) in betti.iter().enumerate() {
            let j = j as i32;
            let ends: usize = bc.bars().iter().filter(|x| x.end == Ext::Fin(qi(0)) && x.degree == j + 1).map(|x| x.mult).sum();
            let starts: usize = bc.bars().iter().filter(|x| x.start == Ext::Fin(qi(0)) && x.degree == j).map(|x| x.mult).sum();
            assert_eq!(ends + starts, r * r * b);
        }
    }
}

#[test]
fn slices_stabilize_to_hom_plus_and_vanish_far_away() {
    let k = f2();
    let p = eye_problem(corpus::eye(&k));
    let plus = legsheaf_core::homengine::hom_plus(&corpus::eye(&k), &corpus::eye(&k)).unwrap();
    assert_eq!(slice(&p, &q(1, 100)).unwrap().cohomology(), plus);
    assert!(slice(&p, &qi(-3)).unwrap().cohomology().is_empty());
    assert!(slice(&p, &qi(3)).unwrap().cohomology().is_empty());
}

#[test]
fn stability_examples() {
    let p = point_problem();
    let r = stability_check(&p, &p, &qi(0)).unwrap();
    assert_eq!(r.distance, Ext::Fin(qi(0)));
    assert!(r.ok);
    let delta = q(1, 4);
    let moved = Front::Point(PointFront { points: vec![qi(0), qi(1) + &delta], potentials: vec![0, -1] });
    let g = legsheaf_core::cellsheaf::LegibleSheaf::new(moved.clone())
        .region(legsheaf_core::cellsheaf::RegionRef::Point(qi(0), q(1, 2)), legsheaf_core::exactalg::Complex::concentrated(&f2(), 0, 1))
        .realize(&f2())
        .unwrap();
    let p2 = PersistenceProblem::new(&corpus::point_pair(), corpus::halfopen(&f2()), &moved, g).unwrap();
    let r = stability_check(&p, &p2, &delta).unwrap();
    assert_eq!(r.distance, Ext::Fin(delta.clone()));
    assert!(r.ok);
    assert!(stability_check(&p, &p2, &q(1, 8)).is_err());
}

#[test]
fn mismatched_problems_are_rejected() {
    let k = f2();
    assert!(matches!(
        PersistenceProblem::new(&corpus::point_pair(), corpus::halfopen(&k), &corpus::unknot(), corpus::eye(&k)),
        Err(PersistError::InvalidFront(_))
    ));
    assert!(matches!(PersistenceProblem::self_problem(&corpus::single_point(), corpus::halfplane(&k)), Err(PersistError::NonCompact(_))));
    assert!(PersistenceProblem::self_problem(&corpus::trefoil(), corpus::eye(&k)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn barcode_reproduces_slice_dimensions(n in -59i64..60) {
        let u = q(2 * n + 1, 20);
        let k = f2();
        for p in [point_problem(), eye_problem(corpus::impure(&k))] {
            if critical_values(&p).contains(&u) {
                continue;
            }
            let bc = barcode(&p).unwrap();
            prop_assert_eq!(slice(&p, &u).unwrap().cohomology(), bc.dims_at(&u));
        }
    }

    #[test]
    fn slices_are_constant_between_critical_values(a in 1i64..99, b in 1i64..99) {
        let p = eye_problem(corpus::eye(&f2()));
        // both inside (0, 2)
        let (u, v) = (q(a, 50), q(b, 50));
        prop_assert_eq!(slice(&p, &u).unwrap().cohomology(), slice(&p, &v).unwrap().cohomology());
    }

    #[test]
    fn point_shift_stability(d in 1i64..40) {
        let delta = q(d, 20);
        let p = point_problem();
        let moved = corpus::point_pair().translated(&delta);
        let p2 = PersistenceProblem::new(&corpus::point_pair(), corpus::halfopen(&f2()), &moved, corpus::halfopen(&f2()).translate(&delta)).unwrap();
        let dist = interleaving_distance(&barcode(&p).unwrap(), &barcode(&p2).unwrap());
        prop_assert!(dist <= Ext::Fin(&delta * qi(2)));
    }
}
