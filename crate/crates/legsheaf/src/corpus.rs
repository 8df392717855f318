//! The bundled example corpus: names, file contents, and where to find it.

use std::collections::BTreeMap;
use std::path::PathBuf;

use legsheaf_core::corpus as core;
use legsheaf_core::fronts::Front;
use legsheaf_core::q::Q;
use legsheaf_core::Rationals;

use crate::files::{front_to_json, pretty, ArcJson, DimsJson, Num, RegionJson, SheafJson, StalkJson};

/// Environment variable overriding the corpus directory.
pub const CORPUS_ENV: &str = "LEGSHEAF_CORPUS";

pub fn corpus_dir() -> PathBuf {
    match std::env::var_os(CORPUS_ENV) {
        Some(d) => PathBuf::from(d),
        None => PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus"),
    }
}

pub struct FrontEntry {
    pub name: &'static str,
    pub about: &'static str,
    pub front: fn() -> Front,
}

pub struct SheafEntry {
    pub name: &'static str,
    pub front: &'static str,
    pub about: &'static str,
    pub json: fn() -> SheafJson,
}

pub fn fronts() -> Vec<FrontEntry> {
    vec![
        FrontEntry { name: "point-pair", about: "two points at heights 0 and 1", front: core::point_pair },
        FrontEntry { name: "single-point", about: "one point at height 0", front: core::single_point },
        FrontEntry { name: "unknot", about: "diamond unknot with cusps at (-1, 0) and (1, 0)", front: core::unknot },
        FrontEntry { name: "trefoil", about: "PL trefoil: 3 crossings, 2 left and 2 right cusps", front: core::trefoil },
        FrontEntry { name: "stacked-link", about: "two unknots, one above the other", front: core::stacked_link },
        FrontEntry { name: "split-link", about: "two unknots side by side", front: core::split_link },
        FrontEntry { name: "clasp", about: "two unknots whose fronts cross twice", front: core::clasp },
        FrontEntry { name: "zigzag-unknot", about: "unknot with two opposite zigzags", front: core::zigzag_unknot },
        FrontEntry {
            name: "zigzag-stabilized",
            about: "unknot with one zigzag, no integer Maslov potential",
            front: core::zigzag_stabilized,
        },
    ]
}

fn graded(pairs: &[(i32, usize)]) -> StalkJson {
    StalkJson::graded(pairs)
}

fn point(x: (i64, i64), t: (i64, i64)) -> Option<(Num, Num)> {
    let n = |(a, b): (i64, i64)| Num::of(&Q::new(a.into(), b.into()));
    Some((n(x), n(t)))
}

fn region(at: Option<(Num, Num)>, above: Option<(usize, usize)>, below: Option<(usize, usize)>, stalk: StalkJson) -> RegionJson {
    RegionJson { at, above, below, stalk }
}

fn eye_json(pairs: &[(i32, usize)]) -> SheafJson {
    SheafJson::legible(vec![region(point((0, 1), (0, 1)), None, None, graded(pairs))], vec![])
}

fn one(deg: i32) -> BTreeMap<String, Vec<Vec<Num>>> {
    [(deg.to_string(), vec![vec![Num::Int(1)]])].into_iter().collect()
}

fn trefoil_json() -> SheafJson {
    let acyclic = StalkJson { lo: Some(0), dims: DimsJson::List(vec![1, 1]), diffs: vec![vec![vec![Num::Int(1)]]] };
    SheafJson::legible(
        vec![
            region(None, None, Some((0, 0)), graded(&[(1, 1)])),
            region(None, Some((3, 0)), None, graded(&[(0, 1)])),
            region(None, None, Some((2, 1)), graded(&[(0, 1), (1, 1)])),
            region(None, None, Some((1, 2)), acyclic),
        ],
        vec![
            ArcJson { sheet: 2, piece: 1, comps: one(1) },
            ArcJson { sheet: 1, piece: 1, comps: one(0) },
            ArcJson { sheet: 1, piece: 2, comps: one(1) },
            ArcJson { sheet: 2, piece: 2, comps: one(0) },
        ],
    )
}

fn cells(s: legsheaf_core::cellsheaf::CellSheaf<Rationals>) -> SheafJson {
    SheafJson::cells(&s, Num::of)
}

pub fn sheaves() -> Vec<SheafEntry> {
    vec![
        SheafEntry {
            name: "halfopen",
            front: "point-pair",
            about: "k on [0, 1)",
            json: || SheafJson::legible(vec![region(point((0, 1), (1, 2)), None, None, graded(&[(0, 1)]))], vec![]),
        },
        SheafEntry {
            name: "halfplane",
            front: "single-point",
            about: "k on [0, +inf): support is not compact",
            json: || SheafJson::legible(vec![region(point((0, 1), (1, 1)), None, None, graded(&[(0, 1)]))], vec![]),
        },
        SheafEntry { name: "eye", front: "unknot", about: "k inside the unknot", json: || eye_json(&[(0, 1)]) },
        SheafEntry { name: "eye2", front: "unknot", about: "k^2 inside the unknot, microlocal rank 2", json: || eye_json(&[(0, 2)]) },
        SheafEntry { name: "impure", front: "unknot", about: "k + k[-1] inside the unknot", json: || eye_json(&[(0, 1), (1, 1)]) },
        SheafEntry { name: "trefoil-sheaf", front: "trefoil", about: "microlocal rank one sheaf on the trefoil", json: trefoil_json },
        SheafEntry { name: "stacked-sum", front: "stacked-link", about: "sum of the two eye sheaves", json: || cells(core::stacked_sum(&Rationals)) },
        SheafEntry { name: "split-sum", front: "split-link", about: "sum of the two eye sheaves", json: || cells(core::split_sum(&Rationals)) },
        SheafEntry { name: "clasp-sum", front: "clasp", about: "sum of the two eye sheaves", json: || cells(core::clasp_sum(&Rationals)) },
    ]
}

/// File name and contents of every corpus file.
pub fn files() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = fronts().iter().map(|f| (format!("{}.json", f.name), front_to_json(&(f.front)()))).collect();
    out.extend(sheaves().iter().map(|s| (format!("{}.json", s.name), pretty(&(s.json)()))));
    out
}
