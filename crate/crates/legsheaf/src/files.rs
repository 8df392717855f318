//! JSON formats for fronts and sheaves. Every rational is a `"p/q"` string.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use legsheaf_core::cellsheaf::{front_complex, CellSheaf, LegibleSheaf, RegionRef};
use legsheaf_core::exactalg::{ChainMap, Complex, Field, Matrix};
use legsheaf_core::fronts::{Cusp, CuspKind, Front, PlFront, PointFront, Sheet};
use legsheaf_core::q::{fmt_q_short, parse_q, Q};
use serde::{Deserialize, Serialize};

#[derive(Debug)]
pub struct FileError(pub String);

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for FileError {}

fn err(msg: impl Into<String>) -> FileError {
    FileError(msg.into())
}

/// A number written as a string, or as a JSON integer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Str(String),
    Int(i64),
}

impl Num {
    pub fn of(x: &Q) -> Num {
        Num::Str(fmt_q_short(x))
    }

    pub fn value(&self) -> Result<Q, FileError> {
        match self {
            Num::Str(s) => parse_q(s).ok_or_else(|| err(format!("not a rational number: {s:?}"))),
            Num::Int(n) => Ok(Q::from_integer((*n).into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SheetJson {
    pub breakpoints: Vec<(Num, Num)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CuspJson {
    /// `"left"` or `"right"`.
    pub kind: String,
    pub sheets: (usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FrontKind {
    Point,
    Pl,
}

/// A point front lists `points`; a PL front lists `sheets` and `cusps`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrontJson {
    pub kind: FrontKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<Num>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sheets: Vec<SheetJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cusps: Vec<CuspJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub potentials: Vec<i64>,
}

impl FrontJson {
    pub fn of(f: &Front) -> FrontJson {
        match f {
            Front::Point(p) => FrontJson {
                kind: FrontKind::Point,
                points: p.points.iter().map(Num::of).collect(),
                sheets: vec![],
                cusps: vec![],
                potentials: p.potentials.clone(),
            },
            Front::Pl(p) => FrontJson {
                kind: FrontKind::Pl,
                points: vec![],
                sheets: p
                    .sheets
                    .iter()
                    .map(|s| SheetJson { breakpoints: s.breakpoints.iter().map(|(x, t)| (Num::of(x), Num::of(t))).collect() })
                    .collect(),
                cusps: p
                    .cusps
                    .iter()
                    .map(|c| CuspJson {
                        kind: match c.kind {
                            CuspKind::Left => "left".into(),
                            CuspKind::Right => "right".into(),
                        },
                        sheets: c.sheets,
                    })
                    .collect(),
                potentials: p.potentials.clone(),
            },
        }
    }

    /// The front as written, before validation.
    pub fn to_front(&self) -> Result<Front, FileError> {
        Ok(match self.kind {
            FrontKind::Point => {
                if !self.sheets.is_empty() || !self.cusps.is_empty() {
                    return Err(err("a point front has no sheets or cusps"));
                }
                Front::Point(PointFront {
                    points: self.points.iter().map(Num::value).collect::<Result<_, _>>()?,
                    potentials: self.potentials.clone(),
                })
            }
            FrontKind::Pl => {
                if !self.points.is_empty() {
                    return Err(err("a PL front has sheets, not points"));
                }
                let mut out = Vec::new();
                for (i, s) in self.sheets.iter().enumerate() {
                    let pts = s
                        .breakpoints
                        .iter()
                        .map(|(x, t)| Ok((x.value()?, t.value()?)))
                        .collect::<Result<Vec<_>, FileError>>()
                        .map_err(|e| err(format!("sheet {i}: {e}")))?;
                    out.push(Sheet::new(pts));
                }
                let cusps = self
                    .cusps
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        let kind = match c.kind.as_str() {
                            "left" => CuspKind::Left,
                            "right" => CuspKind::Right,
                            k => return Err(err(format!("cusp {i}: kind must be \"left\" or \"right\", not {k:?}"))),
                        };
                        Ok(Cusp { kind, sheets: c.sheets })
                    })
                    .collect::<Result<_, _>>()?;
                Front::Pl(PlFront { sheets: out, cusps, potentials: self.potentials.clone() })
            }
        })
    }
}

fn json_err(what: &str, e: serde_json::Error) -> FileError {
    err(format!("malformed {what} JSON at line {}, column {}: {e}", e.line(), e.column()))
}

/// Parses and validates a front.
pub fn parse_front(text: &str) -> Result<Front, FileError> {
    let j: FrontJson = serde_json::from_str(text).map_err(|e| json_err("front", e))?;
    j.to_front()?.prepare().map_err(|r| err(format!("invalid front: {r}")))
}

/// Parses a front without validating it.
pub fn parse_front_raw(text: &str) -> Result<Front, FileError> {
    let j: FrontJson = serde_json::from_str(text).map_err(|e| json_err("front", e))?;
    j.to_front()
}

pub fn front_to_json(f: &Front) -> String {
    pretty(&FrontJson::of(f))
}

/// Row-major matrix entries.
pub type MatrixJson = Vec<Vec<Num>>;

/// Stalk dimensions: a map from degree to dimension, or a list starting at `lo`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DimsJson {
    List(Vec<usize>),
    Map(BTreeMap<String, usize>),
}

/// A stalk: graded dimensions with zero differential, or an explicit complex
/// with `lo`, a list of `dims` and the differentials `diffs`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StalkJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lo: Option<i32>,
    pub dims: DimsJson,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diffs: Vec<MatrixJson>,
}

fn degree(key: &str) -> Result<i32, FileError> {
    key.trim().parse().map_err(|_| err(format!("degree {key:?} is not an integer")))
}

impl StalkJson {
    pub fn graded(pairs: &[(i32, usize)]) -> StalkJson {
        StalkJson { lo: None, dims: DimsJson::Map(pairs.iter().map(|(i, n)| (i.to_string(), *n)).collect()), diffs: vec![] }
    }

    pub fn of<K: Field>(c: &Complex<K>, entry: &impl Fn(&K::Elem) -> Num) -> StalkJson {
        let r = c.support();
        if r.clone().all(|i| c.d(i).is_zero()) {
            return StalkJson::graded(&c.dims().into_iter().collect::<Vec<_>>());
        }
        StalkJson {
            lo: Some(r.start),
            dims: DimsJson::List(r.clone().map(|i| c.dim(i)).collect()),
            diffs: (r.start..r.end - 1).map(|i| matrix_json(&c.d(i), entry)).collect(),
        }
    }

    pub fn build<K: Field>(&self, k: &K) -> Result<Complex<K>, FileError> {
        match (&self.dims, self.lo) {
            (DimsJson::Map(m), None) => {
                if !self.diffs.is_empty() {
                    return Err(err("differentials need \"lo\" and a list of dims"));
                }
                let d = m.iter().map(|(i, n)| Ok((degree(i)?, *n))).collect::<Result<_, FileError>>()?;
                Ok(Complex::from_dims(k, &d))
            }
            (DimsJson::List(dims), Some(lo)) => {
                if dims.len() > 1 && self.diffs.len() + 1 != dims.len() {
                    return Err(err(format!("{} dims need {} differentials, found {}", dims.len(), dims.len() - 1, self.diffs.len())));
                }
                let ms = self
                    .diffs
                    .iter()
                    .enumerate()
                    .map(|(i, m)| matrix(k, dims[i + 1], dims[i], m))
                    .collect::<Result<Vec<_>, _>>()?;
                Complex::new(k, lo, dims.clone(), ms).map_err(|e| err(format!("stalk is not a complex: {e:?}")))
            }
            (DimsJson::List(_), None) => Err(err("a list of dims needs \"lo\"")),
            (DimsJson::Map(_), Some(_)) => Err(err("\"lo\" needs a list of dims")),
        }
    }
}

fn entries<K: Field>(k: &K, m: &MatrixJson) -> Result<Vec<Vec<K::Elem>>, FileError> {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|v| {
                    let q = v.value()?;
                    k.from_q(&q).ok_or_else(|| err(format!("{} is not defined in {}", fmt_q_short(&q), k.name())))
                })
                .collect()
        })
        .collect()
}

fn matrix<K: Field>(k: &K, rows: usize, cols: usize, m: &MatrixJson) -> Result<Matrix<K>, FileError> {
    Matrix::from_rows(k, rows, cols, entries(k, m)?).ok_or_else(|| err(format!("expected a {rows}x{cols} matrix")))
}

fn matrix_json<K: Field>(m: &Matrix<K>, entry: &impl Fn(&K::Elem) -> Num) -> MatrixJson {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| entry(m.get(r, c))).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionJson {
    /// A point `[x, t]` inside the region.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at: Option<(Num, Num)>,
    /// `[sheet, piece]`: the region just above that piece of a sheet.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub above: Option<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub below: Option<(usize, usize)>,
    pub stalk: StalkJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcJson {
    pub sheet: usize,
    #[serde(default)]
    pub piece: usize,
    /// Map from the region above to the region below, per degree.
    pub comps: BTreeMap<String, MatrixJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellMapJson {
    pub from: usize,
    pub to: usize,
    pub comps: BTreeMap<String, MatrixJson>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SheafKind {
    Legible,
    Cells,
}

/// A sheaf given by region stalks and arc maps (`legible`), or by stalks
/// and maps on the cells of the front's arrangement (`cells`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SheafJson {
    pub kind: SheafKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub regions: Vec<RegionJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub arcs: Vec<ArcJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub stalks: Vec<StalkJson>,
    /// Maps along covering relations; omitted ones are zero.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maps: Vec<CellMapJson>,
}

impl SheafJson {
    pub fn build<K: Field>(&self, front: &Front, k: &K) -> Result<CellSheaf<K>, FileError> {
        match self.kind {
            SheafKind::Legible => {
                if !self.stalks.is_empty() || !self.maps.is_empty() {
                    return Err(err("a legible sheaf has regions and arcs, not stalks and maps"));
                }
                let (regions, arcs) = (&self.regions, &self.arcs);
                let mut l = LegibleSheaf::new(front.clone());
                for (i, r) in regions.iter().enumerate() {
                    let at = match (&r.at, r.above, r.below) {
                        (Some((x, t)), None, None) => RegionRef::Point(x.value()?, t.value()?),
                        (None, Some((sheet, piece)), None) => RegionRef::Above { sheet, piece },
                        (None, None, Some((sheet, piece))) => RegionRef::Below { sheet, piece },
                        _ => return Err(err(format!("region {i}: give exactly one of \"at\", \"above\", \"below\""))),
                    };
                    let stalk = r.stalk.build(k).map_err(|e| err(format!("region {i}: {e}")))?;
                    l = l.region(at, stalk);
                }
                for a in arcs {
                    let comps = a.comps.iter().map(|(i, m)| Ok((degree(i)?, entries(k, m)?))).collect::<Result<_, FileError>>()?;
                    l = l.arc_entries(a.sheet, a.piece, comps);
                }
                l.realize(k).map_err(|e| err(format!("invalid sheaf: {e}")))
            }
            SheafKind::Cells => {
                if !self.regions.is_empty() || !self.arcs.is_empty() {
                    return Err(err("a cells sheaf has stalks and maps, not regions and arcs"));
                }
                let (stalks, maps) = (&self.stalks, &self.maps);
                let cx = Arc::new(front_complex(front));
                if stalks.len() != cx.len() {
                    return Err(err(format!("{} stalks given but the arrangement has {} cells", stalks.len(), cx.len())));
                }
                let st = stalks
                    .iter()
                    .enumerate()
                    .map(|(i, s)| s.build(k).map_err(|e| err(format!("cell {i}: {e}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                let mut covers = BTreeMap::new();
                for m in maps {
                    let (a, b) = (m.from, m.to);
                    if a >= st.len() || b >= st.len() {
                        return Err(err(format!("map {a} -> {b}: no such cell")));
                    }
                    let mut comps = BTreeMap::new();
                    for (i, e) in &m.comps {
                        let i = degree(i)?;
                        comps.insert(i, matrix(k, st[b].dim(i), st[a].dim(i), e).map_err(|e| err(format!("map {a} -> {b} degree {i}: {e}")))?);
                    }
                    let cm = ChainMap::new(st[a].clone(), st[b].clone(), comps).map_err(|e| err(format!("map {a} -> {b}: {e:?}")))?;
                    covers.insert((a, b), cm);
                }
                CellSheaf::from_covers(cx, k, st, covers).map_err(|e| err(format!("invalid sheaf: {e}")))
            }
        }
    }

    /// Cell-format description of any sheaf, writing entries with `entry`.
    pub fn cells<K: Field>(s: &CellSheaf<K>, entry: impl Fn(&K::Elem) -> Num) -> SheafJson {
        let cx = &s.complex;
        let stalks = s.stalks().iter().map(|c| StalkJson::of(c, &entry)).collect();
        let mut maps = Vec::new();
        for a in 0..cx.len() {
            for &b in cx.up(a) {
                let m = s.map(a, b);
                if m.is_zero() {
                    continue;
                }
                let comps = m.source().support().filter(|&i| !m.comp(i).is_zero()).map(|i| (i.to_string(), matrix_json(&m.comp(i), &entry))).collect();
                maps.push(CellMapJson { from: a, to: b, comps });
            }
        }
        SheafJson { kind: SheafKind::Cells, regions: vec![], arcs: vec![], stalks, maps }
    }

    pub fn legible(regions: Vec<RegionJson>, arcs: Vec<ArcJson>) -> SheafJson {
        SheafJson { kind: SheafKind::Legible, regions, arcs, stalks: vec![], maps: vec![] }
    }
}

pub fn parse_sheaf<K: Field>(text: &str, front: &Front, k: &K) -> Result<CellSheaf<K>, FileError> {
    let j: SheafJson = serde_json::from_str(text).map_err(|e| json_err("sheaf", e))?;
    j.build(front, k)
}

pub fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
