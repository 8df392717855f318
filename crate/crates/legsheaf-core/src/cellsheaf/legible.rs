//! Sheaves with singular support on a front, described by region stalks
//! and downward maps across arcs, plus their local validity checks and
//! microstalks.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{invert, CellComplex, CellKind, CellSheaf, SheafError};
use crate::cellsheaf::complex::front_complex;
use crate::exactalg::{ChainMap, Complex, Dims, Field, Matrix};
use crate::fronts::Front;
use crate::q::{fmt_q_short, Q};

/// A complement region of a front, named by a point inside it or by the
/// side of a sheet. `piece` counts the crossings on the sheet to the left.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RegionRef {
    Point(Q, Q),
    Above { sheet: usize, piece: usize },
    Below { sheet: usize, piece: usize },
}

/// Region stalks and downward arc maps. Unlisted regions are zero; an
/// unlisted arc map is zero when either side vanishes and the identity
/// when both sides agree.
#[derive(Clone, Debug)]
pub struct LegibleSheaf<K: Field> {
    pub front: Front,
    pub regions: Vec<(RegionRef, Complex<K>)>,
    /// `(sheet, piece) -> F(above) -> F(below)`; for point fronts `sheet` is the point.
    pub arcs: BTreeMap<(usize, usize), ChainMap<K>>,
    /// Arc maps given as row-major entries per degree, shaped at realization.
    pub arc_rows: BTreeMap<(usize, usize), BTreeMap<i32, Vec<Vec<K::Elem>>>>,
}

impl<K: Field> LegibleSheaf<K> {
    pub fn new(front: Front) -> Self {
        LegibleSheaf { front, regions: Vec::new(), arcs: BTreeMap::new(), arc_rows: BTreeMap::new() }
    }

    pub fn region(mut self, r: RegionRef, stalk: Complex<K>) -> Self {
        self.regions.push((r, stalk));
        self
    }

    pub fn arc(mut self, sheet: usize, piece: usize, map: ChainMap<K>) -> Self {
        self.arcs.insert((sheet, piece), map);
        self
    }

    /// Like [`LegibleSheaf::arc`], with the source and target taken from the
    /// regions on either side. Missing degrees are zero.
    pub fn arc_entries(mut self, sheet: usize, piece: usize, comps: BTreeMap<i32, Vec<Vec<K::Elem>>>) -> Self {
        self.arc_rows.insert((sheet, piece), comps);
        self
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, a: usize) -> usize {
        let mut r = a;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut a = a;
        while self.0[a] != r {
            let n = self.0[a];
            self.0[a] = r;
            a = n;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

/// Connected complement region of each cell, by representative; cells on
/// the front get `usize::MAX`.
pub fn regions(cx: &CellComplex) -> Vec<usize> {
    let n = cx.len();
    let mut d = Dsu((0..n).collect());
    for s in 0..n {
        if cx.on_curve(s) {
            continue;
        }
        for &t in cx.up(s) {
            if !cx.on_curve(t) {
                d.union(s, t);
            }
        }
    }
    (0..n).map(|s| if cx.on_curve(s) { usize::MAX } else { d.find(s) }).collect()
}

/// The complement cell directly above a cell in its column.
pub fn cell_above(cx: &CellComplex, s: usize) -> usize {
    match cx.cells[s].kind {
        CellKind::Vertex { line, k } => {
            let l = &cx.lines[line];
            if k + 1 < l.verts.len() {
                l.edge_ids[k]
            } else {
                l.ray_hi
            }
        }
        CellKind::Arc { slab, k } => cx.slabs[slab].band_ids[k + 1],
        _ => s,
    }
}

/// The complement cell directly below a cell on the front.
pub fn cell_below(cx: &CellComplex, s: usize) -> usize {
    match cx.cells[s].kind {
        CellKind::Vertex { line, k } => {
            let l = &cx.lines[line];
            if k > 0 {
                l.edge_ids[k - 1]
            } else {
                l.ray_lo
            }
        }
        CellKind::Arc { slab, k } => cx.slabs[slab].band_ids[k],
        _ => s,
    }
}

/// Number of crossings on curve `c` strictly left of `x`, or at `x` when `inclusive`.
fn piece_of(cx: &CellComplex, c: usize, x: &Q, inclusive: bool) -> usize {
    cx.crossings
        .iter()
        .filter(|cr| (cr.curves.0 == c || cr.curves.1 == c) && (&cr.x < x || (inclusive && &cr.x == x)))
        .count()
}

/// Arcs of slab `slab` passing through the vertex at height `t` on its
/// boundary line, indices from top to bottom.
fn arcs_through(cx: &CellComplex, slab: usize, left_line: bool, t: &Q) -> Vec<usize> {
    let s = &cx.slabs[slab];
    let mut v: Vec<usize> = (0..s.arcs.len()).filter(|&k| if left_line { &s.arcs[k].0 == t } else { &s.arcs[k].1 == t }).collect();
    v.reverse();
    v
}

impl<K: Field> LegibleSheaf<K> {
    /// Cell sheaf on the front's own arrangement. Each cell carries the
    /// stalk of the region directly above it.
    pub fn realize(&self, field: &K) -> Result<CellSheaf<K>, SheafError> {
        let front = self.front.clone().prepare().map_err(|r| SheafError::Data(format!("invalid front: {r}")))?;
        let cx = Arc::new(front_complex(&front));
        let reg = regions(&cx);
        let zero = Complex::zero(field);

        // region stalks
        let mut rstalk: BTreeMap<usize, Complex<K>> = BTreeMap::new();
        for (r, c) in &self.regions {
            let cell = self.resolve(&cx, r)?;
            let root = reg[cell];
            if let Some(prev) = rstalk.get(&root) {
                if prev != c {
                    return Err(SheafError::Data(format!("region {r:?} is given two different stalks")));
                }
            }
            rstalk.insert(root, c.clone());
        }
        let region_stalk = |cell: usize| rstalk.get(&reg[cell]).cloned().unwrap_or_else(|| zero.clone());
        let stalks: Vec<Complex<K>> = (0..cx.len()).map(|s| region_stalk(cell_above(&cx, s))).collect();

        // downward maps of arcs, or of vertices of a point front
        let mut rmap: BTreeMap<usize, ChainMap<K>> = BTreeMap::new();
        let curve_arcs: Vec<(usize, usize, usize)> = match cx.base_dim {
            0 => cx.lines[0].vert_ids.iter().enumerate().map(|(k, &v)| (v, cx.lines[0].vert_curves[k][0], 0)).collect(),
            _ => {
                let mut v = Vec::new();
                for s in &cx.slabs {
                    for (k, &a) in s.arc_ids.iter().enumerate() {
                        let c = s.arc_curves[k][0];
                        v.push((a, c, piece_of(&cx, c, &s.x0, true)));
                    }
                }
                v
            }
        };
        for (a, c, piece) in curve_arcs {
            let sheet = cx.curves.tag(c).1;
            let (up, down) = (&stalks[a], &stalks[cell_below(&cx, a)]);
            let m = match (self.arcs.get(&(sheet, piece)), self.arc_rows.get(&(sheet, piece))) {
                (_, Some(rows)) => {
                    let mut comps = BTreeMap::new();
                    for (&i, r) in rows {
                        let m = Matrix::from_rows(field, down.dim(i), up.dim(i), r.clone()).ok_or_else(|| {
                            SheafError::Shape(format!(
                                "map across sheet {sheet} piece {piece} in degree {i} must be {}x{}",
                                down.dim(i),
                                up.dim(i)
                            ))
                        })?;
                        comps.insert(i, m);
                    }
                    ChainMap::new(up.clone(), down.clone(), comps)
                        .map_err(|e| SheafError::Data(format!("map across sheet {sheet} piece {piece}: {e:?}")))?
                }
                (Some(m), None) => {
                    if m.source().dims() != up.dims() || m.target().dims() != down.dims() {
                        return Err(SheafError::Shape(format!("map across sheet {sheet} piece {piece} has the wrong shape")));
                    }
                    ChainMap::new(up.clone(), down.clone(), (m.source().support()).map(|i| (i, m.comp(i))).collect())
                        .map_err(|e| SheafError::Data(format!("map across sheet {sheet} piece {piece}: {e:?}")))?
                }
                (None, None) if up.is_zero() || down.is_zero() => ChainMap::zero(up, down),
                (None, None) if up == down => ChainMap::identity(up),
                (None, None) => {
                    return Err(SheafError::Data(format!(
                        "sheet {sheet} piece {piece} separates different stalks and needs an explicit map"
                    )))
                }
            };
            rmap.insert(a, m);
        }

        // maps along covering relations
        let mut covers: BTreeMap<(usize, usize), ChainMap<K>> = BTreeMap::new();
        let ident = |s: usize, t: usize| -> Result<ChainMap<K>, SheafError> {
            if stalks[s] != stalks[t] {
                return Err(SheafError::Data(format!("cells {s} and {t} in one region carry different stalks")));
            }
            Ok(ChainMap::identity(&stalks[s]))
        };
        let compose = |arcs: &[usize]| -> ChainMap<K> {
            arcs.iter().fold(None::<ChainMap<K>>, |acc, a| Some(acc.map_or_else(|| rmap[a].clone(), |m| m.then(&rmap[a])))).unwrap()
        };
        for s in 0..cx.len() {
            let cell = &cx.cells[s];
            for &t in cx.up(s) {
                if cx.cells[t].dim != cell.dim + 1 {
                    continue;
                }
                let m = match cell.kind {
                    CellKind::Arc { slab, k } => {
                        if t == cx.slabs[slab].band_ids[k + 1] {
                            ident(s, t)?
                        } else {
                            rmap[&s].clone()
                        }
                    }
                    CellKind::Vertex { line, .. } => {
                        let tv = &cell.t;
                        if t == cell_above(&cx, s) {
                            ident(s, t)?
                        } else if t == cell_below(&cx, s) {
                            if cx.base_dim == 0 {
                                rmap[&s].clone()
                            } else {
                                let (slab, left) = if line < cx.slabs.len() { (line, true) } else { (line - 1, false) };
                                let through = arcs_through(&cx, slab, left, tv);
                                if through.is_empty() {
                                    ident(s, t)?
                                } else {
                                    compose(&through.iter().map(|&k| cx.slabs[slab].arc_ids[k]).collect::<Vec<_>>())
                                }
                            }
                        } else if let CellKind::Arc { slab, k } = cx.cells[t].kind {
                            let left = cx.slabs[slab].x0 == cell.x;
                            let above: Vec<usize> = arcs_through(&cx, slab, left, tv)
                                .into_iter()
                                .filter(|&j| j > k)
                                .map(|j| cx.slabs[slab].arc_ids[j])
                                .collect();
                            if above.is_empty() {
                                ident(s, t)?
                            } else {
                                compose(&above)
                            }
                        } else {
                            return Err(SheafError::Complex(format!("unexpected coface {t} of vertex {s}")));
                        }
                    }
                    _ => ident(s, t)?,
                };
                covers.insert((s, t), m);
            }
        }
        CellSheaf::from_covers(cx, field, stalks, covers)
    }

    fn resolve(&self, cx: &CellComplex, r: &RegionRef) -> Result<usize, SheafError> {
        match r {
            RegionRef::Point(x, t) => {
                let c = cx.locate(x, t);
                if cx.on_curve(c) {
                    Err(SheafError::Data(format!("region point ({}, {}) lies on the front", fmt_q_short(x), fmt_q_short(t))))
                } else {
                    Ok(c)
                }
            }
            RegionRef::Above { sheet, piece } | RegionRef::Below { sheet, piece } => {
                let above = matches!(r, RegionRef::Above { .. });
                if cx.base_dim == 0 {
                    let l = &cx.lines[0];
                    let k = l.vert_curves.iter().position(|c| c.contains(sheet));
                    return k.map(|k| if above { cell_above(cx, l.vert_ids[k]) } else { cell_below(cx, l.vert_ids[k]) }).ok_or_else(|| {
                        SheafError::Data(format!("no point {sheet}"))
                    });
                }
                for s in &cx.slabs {
                    for (k, cs) in s.arc_curves.iter().enumerate() {
                        let c = cs[0];
                        if cx.curves.tag(c).1 == *sheet && piece_of(cx, c, &s.x0, true) == *piece {
                            return Ok(if above { s.band_ids[k + 1] } else { s.band_ids[k] });
                        }
                    }
                }
                Err(SheafError::Data(format!("sheet {sheet} has no piece {piece}")))
            }
        }
    }
}

/// Kinds of local failure reported by [`check_ss`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SsViolationKind {
    Complex,
    NotChainMap,
    Functoriality,
    /// An upward map that should be an isomorphism is not.
    Upward,
    Crossing,
    NonCompact,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SsViolation {
    pub kind: SsViolationKind,
    pub cells: Vec<usize>,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SsReport {
    pub violations: Vec<SsViolation>,
}

impl SsReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, k: SsViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == k)
    }

    /// Valid apart from non-compact support.
    pub fn is_locally_valid(&self) -> bool {
        self.violations.iter().all(|v| v.kind == SsViolationKind::NonCompact)
    }
}

/// Checks that `s` is a sheaf on the arrangement of `f` with singular
/// support on the front and compact support.
pub fn check_ss<K: Field>(s: &CellSheaf<K>, f: &Front) -> SsReport {
    let mut rep = SsReport::default();
    let mut bad = |kind, cells: Vec<usize>, message: String| rep.violations.push(SsViolation { kind, cells, message });
    let front = match f.clone().prepare() {
        Ok(f) => f,
        Err(r) => {
            bad(SsViolationKind::Complex, vec![], format!("invalid front: {r}"));
            return rep;
        }
    };
    let cx = &*s.complex;
    if *cx != front_complex(&front) {
        bad(SsViolationKind::Complex, vec![], String::from("sheaf does not live on the arrangement of this front"));
        return rep;
    }
    let n = cx.len();
    for a in 0..n {
        for &b in cx.up(a) {
            let m = s.map(a, b);
            if ChainMap::new(m.source().clone(), m.target().clone(), m.source().support().map(|i| (i, m.comp(i))).collect()).is_err() {
                bad(SsViolationKind::NotChainMap, vec![a, b], format!("map from cell {a} to cell {b} is not a chain map"));
            }
        }
    }
    for (a, b, c) in s.functoriality_failures() {
        bad(SsViolationKind::Functoriality, vec![a, b, c], format!("maps {a} -> {b} -> {c} do not compose to {a} -> {c}"));
    }
    let reg = regions(cx);
    for a in 0..n {
        let home = reg[cell_above(cx, a)];
        for &b in cx.up(a) {
            if reg[b] == home && !s.map(a, b).is_iso() {
                bad(SsViolationKind::Upward, vec![a, b], format!("map from cell {a} up to cell {b} is not an isomorphism"));
            }
        }
    }
    for (i, cr) in cx.crossings.iter().enumerate() {
        match crossing_acyclic(s, cr.x.clone(), cr.t.clone()) {
            Ok(true) => {}
            Ok(false) => bad(
                SsViolationKind::Crossing,
                vec![cx.locate(&cr.x, &cr.t)],
                format!("crossing {i} at ({}, {}): total complex of the square is not acyclic", fmt_q_short(&cr.x), fmt_q_short(&cr.t)),
            ),
            Err(e) => bad(SsViolationKind::Crossing, vec![cx.locate(&cr.x, &cr.t)], format!("crossing {i}: {e}")),
        }
    }
    for (i, c) in cx.cells.iter().enumerate() {
        if !c.bounded && !s.stalk(i).is_zero() {
            bad(SsViolationKind::NonCompact, vec![i], format!("unbounded cell {i} has a nonzero stalk"));
        }
    }
    rep
}

/// `Tot(F_N -> F_W ⊕ F_E -> F_S)` is acyclic at the crossing vertex at `(x, t)`.
fn crossing_acyclic<K: Field>(s: &CellSheaf<K>, x: Q, t: Q) -> Result<bool, SheafError> {
    let cx = &*s.complex;
    let v = cx.locate(&x, &t);
    let CellKind::Vertex { line, .. } = cx.cells[v].kind else {
        return Err(SheafError::Complex(String::from("crossing is not a vertex")));
    };
    if line == 0 || line + 1 >= cx.lines.len() {
        return Err(SheafError::Complex(String::from("crossing on the boundary of the arrangement")));
    }
    let side = |slab: usize, left: bool| -> Result<(usize, usize, usize), SheafError> {
        let th = arcs_through(cx, slab, left, &t);
        if th.len() != 2 {
            return Err(SheafError::Complex(format!("{} arcs meet the crossing from one side", th.len())));
        }
        let sl = &cx.slabs[slab];
        // middle band and lower arc
        Ok((sl.band_ids[th[0]], sl.arc_ids[th[1]], sl.band_ids[th[1]]))
    };
    let (w, wl, ws) = side(line - 1, false)?;
    let (e, el, es) = side(line, true)?;
    let south = cell_below(cx, v);
    let to_south = |mid: usize, low: usize, band: usize| -> Result<ChainMap<K>, SheafError> {
        let up = invert(&s.map(low, mid)).ok_or_else(|| SheafError::Data(format!("arc {low} to band {mid} is not invertible")))?;
        let back = invert(&s.map(south, band)).ok_or_else(|| SheafError::Data(format!("edge {south} to band {band} is not invertible")))?;
        Ok(up.then(&s.map(low, band)).then(&back))
    };
    let (nw, ne) = (s.map(v, w), s.map(v, e));
    let (ws_, es_) = (to_south(w, wl, ws)?, to_south(e, el, es)?);
    let f = nw.source().field().clone();
    let fs = nw.target().field().clone();
    let mid = super::direct_sum(nw.target(), ne.target());
    let n = nw.source().clone();
    let so = s.stalk(south).clone();
    // f: N -> W ⊕ E
    let fcomps = n.support().map(|i| (i, stack_rows(&nw.comp(i), &ne.comp(i)))).collect();
    let fm = ChainMap::new(n.clone(), mid.clone(), fcomps).map_err(|e| SheafError::Data(format!("{e:?}")))?;
    // g: W ⊕ E -> S, (w, e) -> ws(w) - es(e)
    let neg = f.neg(&f.one());
    let gcomps: BTreeMap<i32, Matrix<K>> = mid.support().map(|i| (i, stack_cols(&ws_.comp(i), &es_.comp(i).scale(&neg)))).collect();
    let gm = ChainMap::new(mid.clone(), so.clone(), gcomps).map_err(|e| SheafError::Data(format!("{e:?}")))?;
    if !fm.then(&gm).is_zero() {
        return Ok(false);
    }
    let cone = fm.cone();
    let hcomps = cone
        .support()
        .map(|i| {
            let z = Matrix::zeros(&fs, so.dim(i), n.dim(i + 1));
            (i, stack_cols(&z, &gm.comp(i)))
        })
        .collect();
    let h = ChainMap::new(cone, so, hcomps).map_err(|e| SheafError::Data(format!("{e:?}")))?;
    Ok(h.cone().cohomology().is_empty())
}

fn stack_rows<K: Field>(a: &Matrix<K>, b: &Matrix<K>) -> Matrix<K> {
    let mut m = Matrix::zeros(a.field(), a.rows() + b.rows(), a.cols());
    m.paste(0, 0, a);
    m.paste(a.rows(), 0, b);
    m
}

fn stack_cols<K: Field>(a: &Matrix<K>, b: &Matrix<K>) -> Matrix<K> {
    let mut m = Matrix::zeros(a.field(), a.rows(), a.cols() + b.cols());
    m.paste(0, 0, a);
    m.paste(0, a.cols(), b);
    m
}

/// A point of the front away from cusps and crossings: sheet (or point)
/// index and `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontPoint {
    pub sheet: usize,
    pub x: Q,
}

/// The front cell carrying `p`.
fn front_cell(cx: &CellComplex, p: &FrontPoint) -> Result<usize, SheafError> {
    if cx.base_dim == 0 {
        let l = &cx.lines[0];
        return l
            .vert_curves
            .iter()
            .position(|c| c.iter().any(|&i| cx.curves.tag(i).1 == p.sheet))
            .map(|k| l.vert_ids[k])
            .ok_or_else(|| SheafError::Data(format!("no point {}", p.sheet)));
    }
    if cx.lines.iter().any(|l| l.x == p.x) {
        return Err(SheafError::Data(format!("x = {} is a cusp, crossing or breakpoint abscissa", fmt_q_short(&p.x))));
    }
    for s in &cx.slabs {
        if s.x0 < p.x && p.x < s.x1 {
            for (k, cs) in s.arc_curves.iter().enumerate() {
                if cs.iter().any(|&i| cx.curves.tag(i).1 == p.sheet) {
                    return Ok(s.arc_ids[k]);
                }
            }
        }
    }
    Err(SheafError::Data(format!("sheet {} does not lie over x = {}", p.sheet, fmt_q_short(&p.x))))
}

/// Microstalk `Tot(F_+ -> F_-)` at a front point, with degrees raised by
/// the Maslov potential of the sheet.
pub fn microstalk<K: Field>(s: &CellSheaf<K>, f: &Front, p: &FrontPoint) -> Result<Complex<K>, SheafError> {
    let front = f.clone().prepare().map_err(|r| SheafError::Data(format!("invalid front: {r}")))?;
    let cx = &*s.complex;
    let a = front_cell(cx, p)?;
    Ok(arc_microstalk(s, a).shift(-(front.potentials()[p.sheet] as i32)))
}

fn arc_microstalk<K: Field>(s: &CellSheaf<K>, a: usize) -> Complex<K> {
    let below = cell_below(&s.complex, a);
    s.map(a, below).cone().shift(-1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MicrolocalRank {
    /// Microstalk dimensions on each component of the Legendrian.
    pub components: Vec<Dims>,
    /// Common rank, when all components agree.
    pub rank: Option<usize>,
    /// Every microstalk sits in a single degree.
    pub pure: bool,
}

impl MicrolocalRank {
    /// Microstalk dimensions, when all components agree.
    pub fn dims(&self) -> Option<&Dims> {
        let first = self.components.first()?;
        self.components.iter().all(|c| c == first).then_some(first)
    }
}

/// Microstalk dimensions along every arc, grouped by component.
pub fn microlocal_rank<K: Field>(s: &CellSheaf<K>, f: &Front) -> Result<MicrolocalRank, SheafError> {
    let front = f.clone().prepare().map_err(|r| SheafError::Data(format!("invalid front: {r}")))?;
    let cx = &*s.complex;
    let pots = front.potentials();
    let (comp_of, ncomp): (Vec<usize>, usize) = match &front {
        Front::Point(p) => ((0..p.points.len()).collect(), p.points.len()),
        Front::Pl(pl) => (pl.component_of(), pl.components().len()),
    };
    let arcs: Vec<usize> = match cx.base_dim {
        0 => cx.lines[0].vert_ids.clone(),
        _ => cx.slabs.iter().flat_map(|s| s.arc_ids.iter().copied()).collect(),
    };
    let mut comps: Vec<Option<Dims>> = vec![None; ncomp];
    for a in arcs {
        let sheet = cx.curves.tag(cx.cell_curves(a)[0]).1;
        let d = arc_microstalk(s, a).shift(-(pots[sheet] as i32)).cohomology();
        let c = comp_of[sheet];
        match &comps[c] {
            None => comps[c] = Some(d),
            Some(prev) if *prev == d => {}
            Some(prev) => {
                return Err(SheafError::Data(format!(
                    "microstalk jumps along component {c} at cell {a}: {prev:?} versus {d:?}"
                )))
            }
        }
    }
    let components: Vec<Dims> = comps.into_iter().map(|c| c.unwrap_or_default()).collect();
    let totals: Vec<usize> = components.iter().map(|d| d.values().sum()).collect();
    let rank = totals.first().copied().filter(|r| totals.iter().all(|t| t == r));
    let pure = components.iter().all(|d| d.len() <= 1);
    Ok(MicrolocalRank { components, rank, pure })
}
