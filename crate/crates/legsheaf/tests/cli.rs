use std::path::{Path, PathBuf};

use legsheaf::corpus;
use legsheaf::files::{front_to_json, parse_front, parse_sheaf, pretty, Num, RegionJson, SheafJson, StalkJson};
use legsheaf_core::barcodes::{parse_tsv, to_tsv, Bar, Barcode};
use legsheaf_core::cellsheaf::CellSheaf;
use legsheaf_core::corpus as core;
use legsheaf_core::exactalg::Field;
use legsheaf_core::fronts::Front;
use legsheaf_core::persistengine::{barcode, PersistenceProblem};
use legsheaf_core::q::{q, qi};
use legsheaf_core::{PrimeField, Rationals};
use proptest::prelude::*;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("legsheaf").chain(args.iter().copied());
    let code = legsheaf::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn tmp() -> tempfile::TempDir {
    tempfile::tempdir().unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn corpus_file(name: &str) -> PathBuf {
    corpus::corpus_dir().join(format!("{name}.json"))
}

#[test]
fn point_pair_barcode_example() {
    let (code, out, _) = run(&["barcode", "corpus/point-pair.json", "corpus/halfopen.json"]);
    assert_eq!(code, 0);
    let lines: Vec<Vec<&str>> = out.lines().map(|l| l.split('\t').collect()).collect();
    assert!(lines.contains(&vec!["1", "-1", "0", "1"]));
    assert!(lines.contains(&vec!["0", "0", "1", "1"]));
    assert_eq!(lines.len(), 2);
}

#[test]
fn distance_to_itself_is_zero() {
    let d = tmp();
    let a = write(d.path(), "a.tsv", "0\t0\t1\t1\n1\t-1\t0\t1\n");
    let (code, out, _) = run(&["distance", &a, &a]);
    assert_eq!((code, out.as_str()), (0, "0/1\n"));
    let b = write(d.path(), "b.tsv", "0\t0\t3/2\t1\n1\t-1\t0\t1\n");
    let (code, out, _) = run(&["distance", &a, &b]);
    assert_eq!((code, out.as_str()), (0, "1/2\n"));
}

#[test]
fn unknot_report_passes() {
    let (code, out, _) = run(&["report", "corpus/unknot.json", "corpus/eye.json"]);
    assert_eq!(code, 0, "{out}");
    let verdicts: Vec<&str> = out.lines().filter(|l| !l.starts_with(' ')).map(|l| l.split('\t').nth(1).unwrap()).collect();
    assert_eq!(verdicts, vec!["pass", "pass", "pass"]);
    let (code, out, _) = run(&["report", "unknot", "eye", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["reports"].as_array().unwrap().iter().all(|r| r["verdict"] == "pass"));
}

#[test]
fn non_compact_report_is_inapplicable() {
    let (code, out, _) = run(&["report", "single-point", "halfplane"]);
    assert_eq!(code, 1);
    assert!(out.lines().any(|l| l == "betti-bound\tinapplicable"), "{out}");
    assert!(!out.contains("\tpass"));
}

#[test]
fn impure_report_is_not_a_failure() {
    let (code, out, _) = run(&["report", "unknot", "impure"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("betti-bound\tinapplicable"));
    assert!(out.contains("morse-inequalities\tpass"));
}

#[test]
fn displacement_report() {
    let d = tmp();
    let g = Front::Pl(core::diamond(q(-7, 8), q(1, 8), qi(1), q(9, 8)));
    let gf = write(d.path(), "g.json", &front_to_json(&g));
    let gs = write(d.path(), "gs.json", &pretty(&SheafJson::legible(vec![RegionJson { at: None, above: None, below: Some((0, 0)), stalk: StalkJson::graded(&[(0, 1)]) }], vec![])));
    let (code, out, err) = run(&["report", "unknot", "eye", "--perturb", &gf, "--perturb-sheaf", &gs, "--eps", "1/2"]);
    assert_eq!(code, 0, "{out}{err}");
    assert!(out.contains("displacement-bound\tpass"), "{out}");
    let (code, _, err) = run(&["report", "unknot", "eye", "--perturb", &gf]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&[]).0, 2);
    let (code, _, err) = run(&["--field", "4", "hom", "unknot", "eye"]);
    assert_eq!(code, 2);
    assert!(err.contains("not prime"), "{err}");
    assert_eq!(run(&["hom", "unknot", "eye", "--format", "svg"]).0, 2);
    assert_eq!(run(&["barcode", "unknot", "eye", "--skyscraper", "0"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn input_errors_exit_1_with_positions() {
    let d = tmp();
    let bad = write(d.path(), "bad.json", "{\n  \"kind\": \"point\",\n  \"points\": [\"0\", \n}");
    let (code, _, err) = run(&["validate", &bad]);
    assert_eq!(code, 1);
    assert!(err.contains("line 4"), "{err}");
    let (code, _, err) = run(&["validate", "no/such/file.json"]);
    assert_eq!(code, 1);
    assert!(err.contains("no such file"));
    let notq = write(d.path(), "notq.json", r#"{"kind":"point","points":["0","x/2"]}"#);
    let (code, _, err) = run(&["validate", &notq]);
    assert_eq!(code, 1);
    assert!(err.contains("x/2"));
    let tsv = write(d.path(), "bad.tsv", "0\t0\t1\t1\n0\t2\t1\t1\n");
    let (code, _, err) = run(&["distance", &tsv, &tsv]);
    assert_eq!(code, 1);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn validate_and_chords() {
    assert_eq!(run(&["validate", "trefoil"]).0, 0);
    let (code, out, _) = run(&["validate", "zigzag-stabilized"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("invalid"));
    let (code, out, _) = run(&["chords", "trefoil"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("5 chords\n"), "{out}");
    let (_, out, _) = run(&["chords", "point-pair", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["length"], "1");
    assert_eq!(v[0]["degree"], 0);
}

#[test]
fn sheaf_check_results() {
    let (code, out, _) = run(&["sheaf-check", "unknot", "impure"]);
    assert_eq!(code, 0);
    assert!(out.contains("pure\tfalse"));
    let (code, out, _) = run(&["sheaf-check", "single-point", "halfplane"]);
    assert_eq!(code, 1);
    assert!(out.contains("NonCompact"));
    // a sheaf file that does not match its front
    let (code, _, err) = run(&["sheaf-check", "trefoil", "eye"]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn hom_outputs() {
    let (code, out, _) = run(&["hom", "point-pair", "halfopen", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["hom_plus"], serde_json::json!({"0": 1}));
    assert_eq!(v["hom_minus"], serde_json::json!({"1": 1}));
    assert_eq!(v["duality_ok"], true);
    let (code, out, _) = run(&["--field", "rational", "hom", "unknot", "eye"]);
    assert_eq!(code, 0);
    assert!(out.contains("field\tQ"));
    assert_eq!(run(&["--field", "F5", "hom", "unknot", "eye", "eye2"]).0, 0);
    assert_eq!(run(&["hom", "single-point", "halfplane"]).0, 1);
}

#[test]
fn skyscraper_barcode() {
    let d = tmp();
    let f = core::cusp_surrogate(q(1, 2));
    let ff = write(d.path(), "s.json", &front_to_json(&f));
    let sf = write(d.path(), "e.json", &pretty(&SheafJson::legible(vec![RegionJson { at: None, above: None, below: Some((0, 0)), stalk: StalkJson::graded(&[(0, 1)]) }], vec![])));
    let (code, out, err) = run(&["barcode", &ff, &sf, "--skyscraper", "0,1"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out, "0\t1/2\t3/2\t1\n");
    let (_, svg, _) = run(&["barcode", &ff, &sf, "--skyscraper", "0,1", "--format", "svg"]);
    assert!(svg.starts_with("<svg"));
    // integer coordinates only
    let body = svg.split_once('>').unwrap().1;
    assert!(!body.contains('.'), "{svg}");
}

#[test]
fn two_sheaf_barcode() {
    let d = tmp();
    let moved = core::point_pair().translated(&q(1, 4));
    let mf = write(d.path(), "m.json", &front_to_json(&moved));
    let ms = write(d.path(), "ms.json", &pretty(&SheafJson::legible(vec![RegionJson { at: Some((Num::of(&qi(0)), Num::of(&q(3, 4)))), above: None, below: None, stalk: StalkJson::graded(&[(0, 1)]) }], vec![])));
    let (code, out, err) = run(&["barcode", "point-pair", "halfopen", &mf, &ms]);
    assert_eq!(code, 0, "{err}");
    let expected = PersistenceProblem::new(&core::point_pair(), core::halfopen(&PrimeField::f2()), &moved, core::halfopen(&PrimeField::f2()).translate(&q(1, 4))).unwrap();
    assert_eq!(parse_tsv(&out).unwrap(), barcode(&expected).unwrap());
}

#[test]
fn output_is_deterministic_and_round_trips() {
    for (front, sheaf) in [("point-pair", "halfopen"), ("unknot", "impure"), ("trefoil", "trefoil-sheaf"), ("split-link", "split-sum")] {
        let a = run(&["barcode", front, sheaf]);
        let b = run(&["barcode", front, sheaf]);
        assert_eq!(a, b);
        assert_eq!(a.0, 0, "{front}: {}", a.2);
        let f = parse_front(&std::fs::read_to_string(corpus_file(front)).unwrap()).unwrap();
        let s = parse_sheaf(&std::fs::read_to_string(corpus_file(sheaf)).unwrap(), &f, &PrimeField::f2()).unwrap();
        let bc = barcode(&PersistenceProblem::self_problem(&f, s).unwrap()).unwrap();
        assert_eq!(parse_tsv(&a.1).unwrap(), bc);
        assert_eq!(to_tsv(&bc), a.1);
        for fmt in ["json", "table"] {
            assert_eq!(run(&["hom", front, sheaf, "--format", fmt]), run(&["hom", front, sheaf, "--format", fmt]));
        }
    }
}

fn same_sheaf<K: Field>(a: &CellSheaf<K>, b: &CellSheaf<K>) -> bool {
    let n = a.complex.len();
    n == b.complex.len()
        && a.stalks() == b.stalks()
        && (0..n).all(|s| a.complex.up(s).iter().all(|&t| a.map(s, t) == b.map(s, t)))
}

fn check_corpus<K: Field>(k: &K) {
    let pairs: Vec<(&str, &str, CellSheaf<K>)> = vec![
        ("point-pair", "halfopen", core::halfopen(k)),
        ("single-point", "halfplane", core::halfplane(k)),
        ("unknot", "eye", core::eye(k)),
        ("unknot", "eye2", core::eye2(k)),
        ("unknot", "impure", core::impure(k)),
        ("trefoil", "trefoil-sheaf", core::trefoil_sheaf(k)),
        ("stacked-link", "stacked-sum", core::stacked_sum(k)),
        ("split-link", "split-sum", core::split_sum(k)),
        ("clasp", "clasp-sum", core::clasp_sum(k)),
    ];
    for (front, sheaf, expected) in pairs {
        let f = parse_front(&std::fs::read_to_string(corpus_file(front)).unwrap()).unwrap();
        let s = parse_sheaf(&std::fs::read_to_string(corpus_file(sheaf)).unwrap(), &f, k).unwrap();
        assert!(same_sheaf(&s, &expected), "{sheaf} over {}", k.name());
    }
}

#[test]
fn shipped_corpus_matches_the_library() {
    for (name, body) in corpus::files() {
        let on_disk = std::fs::read_to_string(corpus::corpus_dir().join(&name)).unwrap();
        assert_eq!(on_disk, body, "{name} is stale; regenerate with `legsheaf corpus --export`");
    }
    for e in corpus::fronts() {
        let f = parse_front(&std::fs::read_to_string(corpus_file(e.name)).unwrap());
        match f {
            Ok(f) => assert_eq!(f, (e.front)().prepare().unwrap()),
            Err(_) => assert!((e.front)().prepare().is_err(), "{}", e.name),
        }
    }
    check_corpus(&PrimeField::f2());
    check_corpus(&Rationals);
    check_corpus(&PrimeField::new(3).unwrap());
}

#[test]
fn corpus_listing_and_export() {
    let (code, out, _) = run(&["corpus"]);
    assert_eq!(code, 0);
    for name in ["point-pair", "unknot", "trefoil", "stacked-link", "split-link", "clasp", "zigzag-unknot", "zigzag-stabilized"] {
        assert!(out.contains(name), "{name}");
    }
    let d = tmp();
    let dir = d.path().join("out");
    assert_eq!(run(&["corpus", "--export", dir.to_str().unwrap()]).0, 0);
    assert_eq!(std::fs::read_dir(&dir).unwrap().count(), corpus::files().len());
}

#[test]
fn malformed_sheaf_files() {
    let d = tmp();
    let cases = [
        (r#"{"kind":"legible","regions":[{"at":["0","0"],"below":[0,0],"stalk":{"dims":{"0":1}}}]}"#, "exactly one"),
        (r#"{"kind":"cells","stalks":[]}"#, "cells"),
        (r#"{"kind":"legible","regions":[{"at":["0","0"],"stalk":{"lo":0,"dims":[1,1],"diffs":[]}}]}"#, "differentials"),
        (r#"{"kind":"legible","regions":[{"at":["0","0"],"stalk":{"lo":0,"dims":[1,1],"diffs":[[["1","1"]]]}}]}"#, "1x1"),
        (r#"{"kind":"legible","regions":[{"at":["0","1"],"stalk":{"dims":{"0":1}}}]}"#, "lies on the front"),
        (r#"{"kind":"legible","regions":[{"at":["0","0"],"stalk":{"dims":{"a":1}}}]}"#, "degree"),
    ];
    for (body, needle) in cases {
        let p = write(d.path(), "s.json", body);
        let (code, _, err) = run(&["sheaf-check", "unknot", &p]);
        assert_eq!(code, 1, "{body}");
        assert!(err.contains(needle), "{body}: {err}");
    }
    // 1/2 has no meaning in F2
    let p = write(d.path(), "half.json", r#"{"kind":"legible","regions":[{"at":["0","0"],"stalk":{"lo":0,"dims":[1,1],"diffs":[[["1/2"]]]}}]}"#);
    assert_eq!(run(&["sheaf-check", "unknot", &p]).0, 1);
    assert_eq!(run(&["--field", "rational", "sheaf-check", "unknot", &p]).0, 0);
}

fn arb_bar() -> impl Strategy<Value = Bar> {
    (-2i32..3, -20i64..20, 1i64..20, 1i64..4, 1usize..3).prop_map(|(d, a, l, den, m)| {
        let mut b = Bar::finite(d, q(a, den), q(a + l, den));
        b.mult = m;
        b
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn tsv_files_round_trip_through_distance(bars in proptest::collection::vec(arb_bar(), 0..6)) {
        let bc = Barcode::new(bars);
        let d = tmp();
        let a = write(d.path(), "a.tsv", &to_tsv(&bc));
        prop_assert_eq!(parse_tsv(&std::fs::read_to_string(&a).unwrap()).unwrap(), bc);
        let (code, out, _) = run(&["distance", &a, &a]);
        prop_assert_eq!(code, 0);
        prop_assert_eq!(out, "0/1\n");
    }
}
