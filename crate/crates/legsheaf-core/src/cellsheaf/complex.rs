//! Cell complexes cut out by overlaid fronts.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::fronts::{Front, Sheet};
use crate::q::{fmt_q_short, mid, Q};

/// Names an input curve: `(front index, sheet or point index)`.
pub type CurveTag = (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CellKind {
    Vertex { line: usize, k: usize },
    /// Vertical segment between vertices `k` and `k + 1` of a line.
    Edge { line: usize, k: usize },
    Ray { line: usize, upper: bool },
    Arc { slab: usize, k: usize },
    /// Band `k` of a slab lies between arcs `k - 1` and `k`.
    Band { slab: usize, k: usize },
    End { right: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub dim: u8,
    pub kind: CellKind,
    /// Interior sample point `(x, t)`.
    pub x: Q,
    pub t: Q,
    pub bounded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub x: Q,
    pub verts: Vec<Q>,
    pub vert_curves: Vec<Vec<usize>>,
    pub vert_ids: Vec<usize>,
    pub edge_ids: Vec<usize>,
    pub ray_lo: usize,
    pub ray_hi: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slab {
    pub x0: Q,
    pub x1: Q,
    /// Arc values at `x0` and `x1`, bottom to top.
    pub arcs: Vec<(Q, Q)>,
    pub arc_curves: Vec<Vec<usize>>,
    pub arc_ids: Vec<usize>,
    pub band_ids: Vec<usize>,
}

impl Slab {
    pub fn arc_value(&self, k: usize, x: &Q) -> Q {
        let (a, b) = &self.arcs[k];
        a + (b - a) * (x - &self.x0) / (&self.x1 - &self.x0)
    }
}

/// Curve data of an arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Curves {
    Points(Vec<(Q, CurveTag)>),
    Sheets(Vec<(Sheet, CurveTag)>),
}

impl Curves {
    pub fn len(&self) -> usize {
        match self {
            Curves::Points(p) => p.len(),
            Curves::Sheets(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn tag(&self, i: usize) -> CurveTag {
        match self {
            Curves::Points(p) => p[i].1,
            Curves::Sheets(s) => s[i].1,
        }
    }
}

/// Transverse crossing of two curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub x: Q,
    pub t: Q,
    pub curves: (usize, usize),
}

/// Regular cell decomposition of the plane (or of the line, for point
/// fronts) whose 1-skeleton contains the given curves. Cells are numbered
/// by dimension, then sample `x`, then sample `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    /// 0 when the complex lives on the line, 1 for the plane.
    pub base_dim: u8,
    pub curves: Curves,
    pub lines: Vec<Line>,
    pub slabs: Vec<Slab>,
    pub ends: Option<(usize, usize)>,
    pub cells: Vec<Cell>,
    pub crossings: Vec<Crossing>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrangeError {
    pub message: String,
    pub pair: Option<(CurveTag, CurveTag)>,
    pub u: Option<Q>,
}

fn sign(q: &Q) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

fn lerp(x0: &Q, a: &Q, x1: &Q, b: &Q, x: &Q) -> Q {
    a + (b - a) * (x - x0) / (x1 - x0)
}

struct Builder {
    cells: Vec<Cell>,
    rel: BTreeSet<(usize, usize)>,
}

impl Builder {
    fn push(&mut self, dim: u8, kind: CellKind, x: Q, t: Q, bounded: bool) -> usize {
        self.cells.push(Cell { dim, kind, x, t, bounded });
        self.cells.len() - 1
    }
}

impl CellComplex {
    /// Overlay of arbitrary curves. Touching or overlapping curves are
    /// allowed here; coincident arcs are merged.
    pub fn overlay(curves: Curves) -> CellComplex {
        match &curves {
            Curves::Points(p) => {
                let vals: BTreeSet<Q> = p.iter().map(|(t, _)| t.clone()).collect();
                let mut b = Builder { cells: Vec::new(), rel: BTreeSet::new() };
                let line = Self::build_line(&mut b, &curves, Q::zero(), vals.into_iter().collect(), 0);
                Self::finish(b, curves, vec![line], Vec::new(), None, 0, Vec::new())
            }
            Curves::Sheets(sheets) => {
                let mut xs: BTreeSet<Q> = sheets.iter().flat_map(|(s, _)| s.xs().cloned()).collect();
                let base: Vec<Q> = xs.iter().cloned().collect();
                let mut crossings = Vec::new();
                for w in base.windows(2) {
                    let present: Vec<usize> =
                        (0..sheets.len()).filter(|&i| sheets[i].0.covers(&w[0]) && sheets[i].0.covers(&w[1])).collect();
                    let vals: Vec<(Q, Q)> =
                        present.iter().map(|&i| (sheets[i].0.value(&w[0]).unwrap(), sheets[i].0.value(&w[1]).unwrap())).collect();
                    for a in 0..present.len() {
                        for b in a + 1..present.len() {
                            let d0 = &vals[a].0 - &vals[b].0;
                            let d1 = &vals[a].1 - &vals[b].1;
                            if sign(&d0) * sign(&d1) < 0 {
                                let x = &w[0] + (&w[1] - &w[0]) * &d0 / (&d0 - &d1);
                                let t = lerp(&w[0], &vals[a].0, &w[1], &vals[a].1, &x);
                                xs.insert(x.clone());
                                crossings.push(Crossing { x, t, curves: (present[a], present[b]) });
                            }
                        }
                    }
                }
                crossings.sort_by(|p, q| (&p.x, &p.t, p.curves).cmp(&(&q.x, &q.t, q.curves)));
                let xs: Vec<Q> = xs.into_iter().collect();
                let mut b = Builder { cells: Vec::new(), rel: BTreeSet::new() };
                let mut lines = Vec::new();
                for (i, x) in xs.iter().enumerate() {
                    let vals: BTreeSet<Q> = sheets.iter().filter_map(|(s, _)| s.value(x)).collect();
                    lines.push(Self::build_line(&mut b, &curves, x.clone(), vals.into_iter().collect(), i));
                }
                let mut slabs = Vec::new();
                for (i, w) in xs.windows(2).enumerate() {
                    let mut arcs: BTreeMap<(Q, Q), Vec<usize>> = BTreeMap::new();
                    for (c, (s, _)) in sheets.iter().enumerate() {
                        if s.covers(&w[0]) && s.covers(&w[1]) {
                            arcs.entry((s.value(&w[0]).unwrap(), s.value(&w[1]).unwrap())).or_default().push(c);
                        }
                    }
                    let mut arcs: Vec<((Q, Q), Vec<usize>)> = arcs.into_iter().collect();
                    arcs.sort_by_key(|p| &p.0 .0 + &p.0 .1);
                    slabs.push(Self::build_slab(&mut b, w[0].clone(), w[1].clone(), arcs, i));
                }
                let first = xs[0].clone();
                let last = xs.last().unwrap().clone();
                let le = b.push(2, CellKind::End { right: false }, first - Q::one(), Q::zero(), false);
                let re = b.push(2, CellKind::End { right: true }, last + Q::one(), Q::zero(), false);
                Self::finish(b, curves, lines, slabs, Some((le, re)), 1, crossings)
            }
        }
    }

    fn build_line(b: &mut Builder, curves: &Curves, x: Q, verts: Vec<Q>, line: usize) -> Line {
        let vert_curves = verts
            .iter()
            .map(|t| match curves {
                Curves::Points(p) => (0..p.len()).filter(|&i| &p[i].0 == t).collect(),
                Curves::Sheets(s) => (0..s.len()).filter(|&i| s[i].0.value(&x).as_ref() == Some(t)).collect(),
            })
            .collect();
        let vert_ids: Vec<usize> =
            verts.iter().enumerate().map(|(k, t)| b.push(0, CellKind::Vertex { line, k }, x.clone(), t.clone(), true)).collect();
        let edge_ids: Vec<usize> = verts
            .windows(2)
            .enumerate()
            .map(|(k, w)| b.push(1, CellKind::Edge { line, k }, x.clone(), mid(&w[0], &w[1]), true))
            .collect();
        let lo = verts.first().map(|t| t - Q::one()).unwrap_or_else(|| -Q::one());
        let hi = verts.last().map(|t| t + Q::one()).unwrap_or_else(Q::one);
        let ray_lo = b.push(1, CellKind::Ray { line, upper: false }, x.clone(), lo, false);
        let ray_hi = b.push(1, CellKind::Ray { line, upper: true }, x.clone(), hi, false);
        for k in 0..verts.len() {
            let below = if k == 0 { ray_lo } else { edge_ids[k - 1] };
            let above = if k + 1 == verts.len() { ray_hi } else { edge_ids[k] };
            b.rel.insert((vert_ids[k], below));
            b.rel.insert((vert_ids[k], above));
        }
        Line { x, verts, vert_curves, vert_ids, edge_ids, ray_lo, ray_hi }
    }

    fn build_slab(b: &mut Builder, x0: Q, x1: Q, arcs: Vec<((Q, Q), Vec<usize>)>, slab: usize) -> Slab {
        let xm = mid(&x0, &x1);
        let mids: Vec<Q> = arcs.iter().map(|((a, c), _)| mid(a, c)).collect();
        let arc_ids: Vec<usize> =
            mids.iter().enumerate().map(|(k, t)| b.push(1, CellKind::Arc { slab, k }, xm.clone(), t.clone(), true)).collect();
        let m = arcs.len();
        let band_ids: Vec<usize> = (0..=m)
            .map(|k| {
                let (t, bounded) = match (k, m) {
                    (_, 0) => (Q::zero(), false),
                    (0, _) => (&mids[0] - Q::one(), false),
                    (k, m) if k == m => (&mids[m - 1] + Q::one(), false),
                    _ => (mid(&mids[k - 1], &mids[k]), true),
                };
                b.push(2, CellKind::Band { slab, k }, xm.clone(), t, bounded)
            })
            .collect();
        for k in 0..m {
            b.rel.insert((arc_ids[k], band_ids[k]));
            b.rel.insert((arc_ids[k], band_ids[k + 1]));
        }
        Slab { x0, x1, arcs: arcs.iter().map(|a| a.0.clone()).collect(), arc_curves: arcs.into_iter().map(|a| a.1).collect(), arc_ids, band_ids }
    }

    /// Relations between the cells of a line and an adjacent slab.
    fn attach(b: &mut Builder, line: &Line, slab: &Slab, left_side: bool) {
        let at = |k: usize| -> Q {
            if left_side {
                slab.arcs[k].1.clone()
            } else {
                slab.arcs[k].0.clone()
            }
        };
        let m = slab.arcs.len();
        let vals: Vec<Q> = (0..m).map(at).collect();
        // band k spans [vals[k-1], vals[k]] at this line
        let band_lo = |k: usize| if k == 0 { None } else { Some(&vals[k - 1]) };
        let band_hi = |k: usize| if k == m { None } else { Some(&vals[k]) };
        let contains = |k: usize, lo: Option<&Q>, hi: Option<&Q>| -> bool {
            let ok_lo = match (band_lo(k), lo) {
                (None, _) => true,
                (Some(_), None) => false,
                (Some(a), Some(l)) => a <= l,
            };
            let ok_hi = match (band_hi(k), hi) {
                (None, _) => true,
                (Some(_), None) => false,
                (Some(a), Some(h)) => a >= h,
            };
            ok_lo && ok_hi
        };
        for (i, v) in line.verts.iter().enumerate() {
            let id = line.vert_ids[i];
            for k in 0..m {
                if &vals[k] == v {
                    b.rel.insert((id, slab.arc_ids[k]));
                }
            }
            for k in 0..=m {
                if contains(k, Some(v), Some(v)) {
                    b.rel.insert((id, slab.band_ids[k]));
                }
            }
        }
        for (i, w) in line.verts.windows(2).enumerate() {
            for k in 0..=m {
                if contains(k, Some(&w[0]), Some(&w[1])) {
                    b.rel.insert((line.edge_ids[i], slab.band_ids[k]));
                }
            }
        }
        let lo = line.verts.first();
        let hi = line.verts.last();
        for k in 0..=m {
            if contains(k, None, lo) {
                b.rel.insert((line.ray_lo, slab.band_ids[k]));
            }
            if contains(k, hi, None) {
                b.rel.insert((line.ray_hi, slab.band_ids[k]));
            }
        }
    }

    fn line_cells(line: &Line) -> Vec<usize> {
        let mut v = line.vert_ids.clone();
        v.extend(line.edge_ids.iter().copied());
        v.push(line.ray_lo);
        v.push(line.ray_hi);
        v
    }

    fn finish(
        mut b: Builder,
        curves: Curves,
        mut lines: Vec<Line>,
        mut slabs: Vec<Slab>,
        ends: Option<(usize, usize)>,
        base_dim: u8,
        crossings: Vec<Crossing>,
    ) -> CellComplex {
        for i in 0..slabs.len() {
            Self::attach(&mut b, &lines[i], &slabs[i], false);
            Self::attach(&mut b, &lines[i + 1], &slabs[i], true);
        }
        if let Some((le, re)) = ends {
            for c in Self::line_cells(&lines[0]) {
                b.rel.insert((c, le));
            }
            for c in Self::line_cells(lines.last().unwrap()) {
                b.rel.insert((c, re));
            }
        }
        // close transitively (vertex < arc < band already implies vertex < band,
        // but closing keeps the relation honest for any input)
        let n = b.cells.len();
        let mut up: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &(s, t) in &b.rel {
            up[s].insert(t);
        }
        for d in [1u8, 0u8] {
            for s in 0..n {
                if b.cells[s].dim != d {
                    continue;
                }
                let ext: Vec<usize> = up[s].iter().flat_map(|&t| up[t].iter().copied().collect::<Vec<_>>()).collect();
                up[s].extend(ext);
            }
        }
        // renumber by (dim, x, t)
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&p, &q| {
            let (a, c) = (&b.cells[p], &b.cells[q]);
            (a.dim, &a.x, &a.t).cmp(&(c.dim, &c.x, &c.t))
        });
        let mut new_id = vec![0usize; n];
        for (k, &o) in order.iter().enumerate() {
            new_id[o] = k;
        }
        let cells: Vec<Cell> = order.iter().map(|&o| b.cells[o].clone()).collect();
        let mut upn: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut down: Vec<Vec<usize>> = vec![Vec::new(); n];
        for s in 0..n {
            for &t in &up[s] {
                upn[new_id[s]].push(new_id[t]);
                down[new_id[t]].push(new_id[s]);
            }
        }
        for v in upn.iter_mut().chain(down.iter_mut()) {
            v.sort_unstable();
        }
        let re = |v: &mut Vec<usize>| v.iter_mut().for_each(|i| *i = new_id[*i]);
        for l in lines.iter_mut() {
            re(&mut l.vert_ids);
            re(&mut l.edge_ids);
            l.ray_lo = new_id[l.ray_lo];
            l.ray_hi = new_id[l.ray_hi];
        }
        for s in slabs.iter_mut() {
            re(&mut s.arc_ids);
            re(&mut s.band_ids);
        }
        let ends = ends.map(|(l, r)| (new_id[l], new_id[r]));
        CellComplex { base_dim, curves, lines, slabs, ends, cells, crossings, up: upn, down }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Cells strictly above `s` in the face order (cells whose closure contains `s`).
    pub fn up(&self, s: usize) -> &[usize] {
        &self.up[s]
    }

    /// Cells strictly below `s` in the face order.
    pub fn down(&self, s: usize) -> &[usize] {
        &self.down[s]
    }

    pub fn le(&self, s: usize, t: usize) -> bool {
        s == t || self.up[s].binary_search(&t).is_ok()
    }

    /// Whether a cell lies on one of the curves.
    pub fn on_curve(&self, s: usize) -> bool {
        matches!(self.cells[s].kind, CellKind::Vertex { .. } | CellKind::Arc { .. })
    }

    /// Curves through a cell on the 1-skeleton.
    pub fn cell_curves(&self, s: usize) -> &[usize] {
        match self.cells[s].kind {
            CellKind::Vertex { line, k } => &self.lines[line].vert_curves[k],
            CellKind::Arc { slab, k } => &self.slabs[slab].arc_curves[k],
            _ => &[],
        }
    }

    /// Cells from top to bottom along the vertical line through `x`.
    pub fn column(&self, x: &Q) -> Vec<usize> {
        let line_col = |l: &Line| -> Vec<usize> {
            let mut v = vec![l.ray_hi];
            for k in (0..l.verts.len()).rev() {
                v.push(l.vert_ids[k]);
                if k > 0 {
                    v.push(l.edge_ids[k - 1]);
                }
            }
            v.push(l.ray_lo);
            v
        };
        if self.base_dim == 0 {
            return line_col(&self.lines[0]);
        }
        let xs: Vec<&Q> = self.lines.iter().map(|l| &l.x).collect();
        match xs.binary_search(&x) {
            Ok(i) => line_col(&self.lines[i]),
            Err(0) => vec![self.ends.unwrap().0],
            Err(i) if i == xs.len() => vec![self.ends.unwrap().1],
            Err(i) => {
                let s = &self.slabs[i - 1];
                let mut v = Vec::new();
                for k in (0..=s.arcs.len()).rev() {
                    v.push(s.band_ids[k]);
                    if k > 0 {
                        v.push(s.arc_ids[k - 1]);
                    }
                }
                v
            }
        }
    }

    /// The cell containing the point `(x, t)`. For complexes on the line `x` is ignored.
    pub fn locate(&self, x: &Q, t: &Q) -> usize {
        let on_line = |l: &Line| match l.verts.binary_search(t) {
            Ok(k) => l.vert_ids[k],
            Err(0) => l.ray_lo,
            Err(k) if k == l.verts.len() => l.ray_hi,
            Err(k) => l.edge_ids[k - 1],
        };
        if self.base_dim == 0 {
            return on_line(&self.lines[0]);
        }
        match self.lines.binary_search_by(|l| l.x.cmp(x)) {
            Ok(i) => on_line(&self.lines[i]),
            Err(0) => self.ends.unwrap().0,
            Err(i) if i == self.lines.len() => self.ends.unwrap().1,
            Err(i) => {
                let s = &self.slabs[i - 1];
                let (mut below, mut hi) = (0, s.arcs.len());
                while below < hi {
                    let m = (below + hi) / 2;
                    if s.arc_value(m, x) < *t {
                        below = m + 1;
                    } else {
                        hi = m;
                    }
                }
                if below < s.arcs.len() && s.arc_value(below, x) == *t {
                    s.arc_ids[below]
                } else {
                    s.band_ids[below]
                }
            }
        }
    }

    /// Cells met, in order, by the vertical segment from `(x, t_hi)` down to `(x, t_lo)`.
    pub fn vertical_walk(&self, x: &Q, t_hi: &Q, t_lo: &Q) -> Vec<usize> {
        let col = self.column(x);
        let (a, b) = (self.locate(x, t_hi), self.locate(x, t_lo));
        let i = col.iter().position(|&c| c == a).unwrap();
        let j = col.iter().position(|&c| c == b).unwrap();
        col[i..=j.max(i)].to_vec()
    }

    /// The complex moved up by `c`.
    pub fn translated(&self, c: &Q) -> CellComplex {
        let curves = match &self.curves {
            Curves::Points(p) => Curves::Points(p.iter().map(|(t, g)| (t + c, *g)).collect()),
            Curves::Sheets(s) => Curves::Sheets(s.iter().map(|(sh, g)| (sh.translated(c), *g)).collect()),
        };
        CellComplex::overlay(curves)
    }

    /// Number of transverse crossings between curves carrying different tags' fronts.
    pub fn crossings_between(&self, fa: usize, fb: usize) -> usize {
        self.crossings
            .iter()
            .filter(|c| {
                let (a, b) = (self.curves.tag(c.curves.0).0, self.curves.tag(c.curves.1).0);
                (a == fa && b == fb) || (a == fb && b == fa)
            })
            .count()
    }
}

fn curves_of(fronts: &[Front], translations: &[Q]) -> Result<Curves, ArrangeError> {
    let err = |m: &str| ArrangeError { message: String::from(m), pair: None, u: None };
    if fronts.is_empty() {
        return Err(err("no fronts to arrange"));
    }
    let shift = |i: usize| translations.get(i).cloned().unwrap_or_else(Q::zero);
    match &fronts[0] {
        Front::Point(_) => {
            let mut v = Vec::new();
            for (i, f) in fronts.iter().enumerate() {
                match f {
                    Front::Point(p) => v.extend(p.points.iter().enumerate().map(|(j, t)| (t + shift(i), (i, j)))),
                    Front::Pl(_) => return Err(err("cannot overlay point fronts with fronts over the line")),
                }
            }
            Ok(Curves::Points(v))
        }
        Front::Pl(_) => {
            let mut v = Vec::new();
            for (i, f) in fronts.iter().enumerate() {
                match f {
                    Front::Pl(p) => v.extend(p.sheets.iter().enumerate().map(|(j, s)| (s.translated(&shift(i)), (i, j)))),
                    Front::Point(_) => return Err(err("cannot overlay point fronts with fronts over the line")),
                }
            }
            Ok(Curves::Sheets(v))
        }
    }
}

/// Overlay arrangement of translated fronts, requiring every pair of
/// curves from different fronts either to coincide or to meet only in
/// transverse crossings away from cusps.
pub fn arrange(fronts: &[Front], translations: &[Q]) -> Result<CellComplex, ArrangeError> {
    let curves = curves_of(fronts, translations)?;
    let shift = |i: usize| translations.get(i).cloned().unwrap_or_else(Q::zero);
    match &curves {
        Curves::Points(p) => {
            for a in 0..p.len() {
                for b in a + 1..p.len() {
                    if p[a].1 .0 != p[b].1 .0 && p[a].0 == p[b].0 {
                        let same = fronts[p[a].1 .0] == fronts[p[b].1 .0] && shift(p[a].1 .0) == shift(p[b].1 .0);
                        if !same {
                            return Err(ArrangeError {
                                message: format!("non-generic overlay: points meet at t = {}", fmt_q_short(&p[a].0)),
                                pair: Some((p[a].1, p[b].1)),
                                u: Some(shift(p[b].1 .0) - shift(p[a].1 .0)),
                            });
                        }
                    }
                }
            }
        }
        Curves::Sheets(s) => {
            for a in 0..s.len() {
                for b in a + 1..s.len() {
                    let (fa, fb) = (s[a].1 .0, s[b].1 .0);
                    if fa == fb || s[a].0 == s[b].0 {
                        continue;
                    }
                    if let Some(m) = contact(&s[a].0, &s[b].0) {
                        return Err(ArrangeError {
                            message: format!("non-generic overlay: {m}"),
                            pair: Some((s[a].1, s[b].1)),
                            u: Some(shift(fb) - shift(fa)),
                        });
                    }
                }
            }
        }
    }
    Ok(CellComplex::overlay(curves))
}

/// Describes a non-transverse contact between two sheets, if any.
fn contact(a: &Sheet, b: &Sheet) -> Option<String> {
    let lo = a.x_start().max(b.x_start()).clone();
    let hi = a.x_end().min(b.x_end()).clone();
    if lo > hi {
        return None;
    }
    let mut xs: BTreeSet<Q> = a.xs().chain(b.xs()).filter(|x| **x >= lo && **x <= hi).cloned().collect();
    xs.insert(lo.clone());
    xs.insert(hi.clone());
    let xs: Vec<Q> = xs.into_iter().collect();
    let gap = |x: &Q| a.value(x).unwrap() - b.value(x).unwrap();
    for (i, x) in xs.iter().enumerate() {
        if !gap(x).is_zero() {
            continue;
        }
        let t = a.value(x).unwrap();
        if i == 0 || i + 1 == xs.len() {
            return Some(format!("a cusp or endpoint lies on another sheet at ({}, {})", fmt_q_short(x), fmt_q_short(&t)));
        }
        let (l, r) = (gap(&mid(&xs[i - 1], x)), gap(&mid(x, &xs[i + 1])));
        if sign(&l) * sign(&r) >= 0 {
            return Some(format!("sheets touch without crossing at ({}, {})", fmt_q_short(x), fmt_q_short(&t)));
        }
    }
    for w in xs.windows(2) {
        if gap(&w[0]).is_zero() && gap(&w[1]).is_zero() {
            return Some(format!("sheets overlap on [{}, {}]", fmt_q_short(&w[0]), fmt_q_short(&w[1])));
        }
    }
    None
}

/// Cell complex of a single front.
pub fn front_complex(f: &Front) -> CellComplex {
    CellComplex::overlay(curves_of(core::slice::from_ref(f), &[]).expect("one front"))
}
