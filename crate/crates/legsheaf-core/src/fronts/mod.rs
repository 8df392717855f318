//! Legendrian fronts: finite point sets on the line and piecewise-linear
//! multi-sheet fronts over the line, with Maslov potentials and graded
//! Reeb chords.

mod chords;
mod geom;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::q::{fmt_q_short, Q};

pub use chords::*;
pub use geom::{pieces, sign, Piece, Sheet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CuspKind {
    /// Two strands are born here and open to the right.
    Left,
    /// Two strands die here, arriving from the left.
    Right,
}

/// A cusp joining the starts (left) or ends (right) of two sheets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cusp {
    pub kind: CuspKind,
    pub sheets: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointFront {
    pub points: Vec<Q>,
    pub potentials: Vec<i64>,
}

/// Piecewise-linear front. An empty potential list asks for the canonical
/// potential, whose maximum on each component is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlFront {
    pub sheets: Vec<Sheet>,
    pub cusps: Vec<Cusp>,
    pub potentials: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Front {
    Point(PointFront),
    Pl(PlFront),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViolationKind {
    Structure,
    Monotonicity,
    Cusp,
    Potential,
    ParallelSegments,
    NonGeneric,
    CuspWindow,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, kind: ViolationKind, message: String) {
        self.violations.push(Violation { kind, message });
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Derived geometry of a cusp.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspGeom {
    pub kind: CuspKind,
    pub x: Q,
    pub t: Q,
    pub upper: usize,
    pub lower: usize,
    /// Open slope interval swept by a smoothing of the cusp.
    pub window: (Q, Q),
}

fn pt(x: &Q, t: &Q) -> String {
    format!("({}, {})", fmt_q_short(x), fmt_q_short(t))
}

impl PlFront {
    /// Position, strands and slope window of cusp `k`. `None` if the two
    /// sheets do not meet with distinct slopes.
    pub fn cusp_geom(&self, k: usize) -> Option<CuspGeom> {
        let c = &self.cusps[k];
        let (a, b) = c.sheets;
        let (sa, sb) = (self.sheets.get(a)?, self.sheets.get(b)?);
        if a == b {
            return None;
        }
        let (pa, pb, ma, mb) = match c.kind {
            CuspKind::Left => (sa.start(), sb.start(), sa.slope_right(sa.x_start())?, sb.slope_right(sb.x_start())?),
            CuspKind::Right => (sa.end(), sb.end(), sa.slope_left(sa.x_end())?, sb.slope_left(sb.x_end())?),
        };
        if pa != pb || ma == mb {
            return None;
        }
        let a_upper = match c.kind {
            CuspKind::Left => ma > mb,
            CuspKind::Right => ma < mb,
        };
        let (upper, lower) = if a_upper { (a, b) } else { (b, a) };
        let window = if ma < mb { (ma, mb) } else { (mb, ma) };
        Some(CuspGeom { kind: c.kind, x: pa.0.clone(), t: pa.1.clone(), upper, lower, window })
    }

    pub fn cusp_geoms(&self) -> Vec<CuspGeom> {
        (0..self.cusps.len()).filter_map(|k| self.cusp_geom(k)).collect()
    }

    /// Connected components as sorted sheet lists, ordered by first sheet.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.sheets.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for c in &self.cusps {
            if c.sheets.0 < n && c.sheets.1 < n {
                let (ra, rb) = (find(&mut parent, c.sheets.0), find(&mut parent, c.sheets.1));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut root_of = vec![usize::MAX; n];
        for s in 0..n {
            let r = find(&mut parent, s);
            if root_of[r] == usize::MAX {
                root_of[r] = comps.len();
                comps.push(Vec::new());
            }
            comps[root_of[r]].push(s);
        }
        comps
    }

    /// Component index of each sheet.
    pub fn component_of(&self) -> Vec<usize> {
        let mut v = vec![0; self.sheets.len()];
        for (k, c) in self.components().iter().enumerate() {
            for &s in c {
                v[s] = k;
            }
        }
        v
    }

    /// All breakpoint and cusp abscissae.
    pub fn event_xs(&self) -> BTreeSet<Q> {
        self.sheets.iter().flat_map(|s| s.xs().cloned()).collect()
    }

    fn check_structure(&self, r: &mut ValidationReport) -> bool {
        let mut ok = true;
        if self.sheets.is_empty() {
            r.push(ViolationKind::Structure, String::from("front has no sheets"));
            return false;
        }
        for (i, s) in self.sheets.iter().enumerate() {
            if s.breakpoints.len() < 2 {
                r.push(ViolationKind::Structure, format!("sheet {i} needs at least two breakpoints"));
                ok = false;
                continue;
            }
            for w in s.breakpoints.windows(2) {
                if w[0].0 >= w[1].0 {
                    r.push(
                        ViolationKind::Monotonicity,
                        format!("sheet {i}: breakpoint x must strictly increase at {}", pt(&w[1].0, &w[1].1)),
                    );
                    ok = false;
                }
            }
        }
        if !ok {
            return false;
        }
        let n = self.sheets.len();
        let mut left = vec![0usize; n];
        let mut right = vec![0usize; n];
        for (k, c) in self.cusps.iter().enumerate() {
            let (a, b) = c.sheets;
            if a >= n || b >= n || a == b {
                r.push(ViolationKind::Cusp, format!("cusp {k} names invalid sheets ({a}, {b})"));
                ok = false;
                continue;
            }
            let ends = match c.kind {
                CuspKind::Left => &mut left,
                CuspKind::Right => &mut right,
            };
            ends[a] += 1;
            ends[b] += 1;
            if self.cusp_geom(k).is_none() {
                r.push(ViolationKind::Cusp, format!("cusp {k}: sheets {a} and {b} must share an endpoint and have distinct slopes there"));
                ok = false;
            }
        }
        for s in 0..n {
            if left[s] != 1 || right[s] != 1 {
                r.push(ViolationKind::Cusp, format!("sheet {s} must start at exactly one left cusp and end at exactly one right cusp"));
                ok = false;
            }
        }
        ok
    }

    /// Potentials with `d(lower) = d(upper) + 1` at every cusp.
    fn check_potentials(&self, r: &mut ValidationReport) -> Option<Vec<i64>> {
        let geoms = self.cusp_geoms();
        if self.potentials.is_empty() {
            let n = self.sheets.len();
            let mut d: Vec<Option<i64>> = vec![None; n];
            for comp in self.components() {
                d[comp[0]] = Some(0);
                let mut changed = true;
                while changed {
                    changed = false;
                    for g in &geoms {
                        match (d[g.upper], d[g.lower]) {
                            (Some(u), None) => {
                                d[g.lower] = Some(u + 1);
                                changed = true;
                            }
                            (None, Some(l)) => {
                                d[g.upper] = Some(l - 1);
                                changed = true;
                            }
                            (Some(u), Some(l)) if l != u + 1 => {
                                r.push(
                                    ViolationKind::Potential,
                                    format!("no Maslov potential: cusp at {} closes a loop with nonzero rotation", pt(&g.x, &g.t)),
                                );
                                return None;
                            }
                            _ => {}
                        }
                    }
                }
            }
            let mut d: Vec<i64> = d.into_iter().map(|v| v.unwrap_or(0)).collect();
            for comp in self.components() {
                let top = comp.iter().map(|&s| d[s]).max().unwrap_or(0);
                for &s in &comp {
                    d[s] -= top;
                }
            }
            return Some(d);
        }
        if self.potentials.len() != self.sheets.len() {
            r.push(ViolationKind::Potential, format!("{} potentials for {} sheets", self.potentials.len(), self.sheets.len()));
            return None;
        }
        let p = &self.potentials;
        let mut orient = BTreeSet::new();
        for g in &geoms {
            let diff = p[g.lower] - p[g.upper];
            if diff.abs() != 1 {
                r.push(
                    ViolationKind::Potential,
                    format!("potentials across the cusp at {} must differ by 1", pt(&g.x, &g.t)),
                );
                return None;
            }
            orient.insert(diff);
        }
        if orient.len() > 1 {
            r.push(ViolationKind::Potential, String::from("inconsistent potentials: cusps disagree on which strand is higher"));
            return None;
        }
        if orient.contains(&-1) {
            Some(p.iter().map(|d| -d).collect())
        } else {
            Some(p.clone())
        }
    }

    fn check_generic(&self, r: &mut ValidationReport) {
        let events = self.event_xs();
        let geoms = self.cusp_geoms();
        let mut crossings: Vec<((Q, Q), (usize, usize))> = Vec::new();
        let cusp_pair = |a: usize, b: usize, x: &Q| {
            geoms.iter().any(|g| (g.upper == a && g.lower == b || g.upper == b && g.lower == a) && &g.x == x)
        };
        for a in 0..self.sheets.len() {
            for b in a + 1..self.sheets.len() {
                let ps = pieces(&self.sheets[a], &self.sheets[b]);
                for (k, p) in ps.iter().enumerate() {
                    if p.slope_a == p.slope_b {
                        r.push(
                            ViolationKind::ParallelSegments,
                            format!("parallel segments: sheets {a} and {b} on [{}, {}]", fmt_q_short(&p.x0), fmt_q_short(&p.x1)),
                        );
                    }
                    let mut ends = vec![(&p.x0, &p.d0)];
                    if k + 1 == ps.len() {
                        ends.push((&p.x1, &p.d1));
                    }
                    for (x, d) in ends {
                        if sign(d) == 0 && !cusp_pair(a, b, x) {
                            let t = self.sheets[a].value(x).unwrap();
                            r.push(
                                ViolationKind::NonGeneric,
                                format!("non-generic coincidence: sheets {a} and {b} meet at breakpoint {}", pt(x, &t)),
                            );
                        }
                    }
                    if let Some(xc) = p.crossing() {
                        let t = self.sheets[a].value(&xc).unwrap();
                        if events.contains(&xc) {
                            r.push(
                                ViolationKind::NonGeneric,
                                format!("non-generic coincidence: crossing of sheets {a} and {b} at {} shares its x with a breakpoint or cusp", pt(&xc, &t)),
                            );
                        }
                        crossings.push(((xc, t), (a, b)));
                    }
                }
            }
        }
        crossings.sort_by(|x, y| x.0.cmp(&y.0));
        for w in crossings.windows(2) {
            if w[0].0 == w[1].0 {
                r.push(
                    ViolationKind::NonGeneric,
                    format!("non-generic coincidence: triple point at {}", pt(&w[0].0 .0, &w[0].0 .1)),
                );
            }
        }
        for g in &geoms {
            for (c, s) in self.sheets.iter().enumerate() {
                if !s.spans(&g.x) {
                    continue;
                }
                let (sl, sr) = (s.slope_left(&g.x).unwrap(), s.slope_right(&g.x).unwrap());
                let (lo, hi) = if sl < sr { (sl, sr) } else { (sr, sl) };
                if hi > g.window.0 && lo < g.window.1 {
                    r.push(
                        ViolationKind::CuspWindow,
                        format!("sheet {c} passes over the cusp at {} with a slope inside the cusp's slope range", pt(&g.x, &g.t)),
                    );
                }
            }
        }
    }

    pub fn translated(&self, u: &Q) -> PlFront {
        PlFront { sheets: self.sheets.iter().map(|s| s.translated(u)).collect(), ..self.clone() }
    }
}

impl Front {
    /// Base dimension: 0 for point fronts, 1 for fronts over the line.
    pub fn n(&self) -> i32 {
        match self {
            Front::Point(_) => 0,
            Front::Pl(_) => 1,
        }
    }

    pub fn validate(&self) -> ValidationReport {
        self.check().0
    }

    fn check(&self) -> (ValidationReport, Option<Vec<i64>>) {
        let mut r = ValidationReport::default();
        match self {
            Front::Point(p) => {
                if p.points.is_empty() {
                    r.push(ViolationKind::Structure, String::from("point front has no points"));
                }
                for w in p.points.windows(2) {
                    if w[0] >= w[1] {
                        r.push(ViolationKind::Monotonicity, format!("points must strictly increase at {}", fmt_q_short(&w[1])));
                    }
                }
                let pots = if p.potentials.is_empty() {
                    Some(vec![0; p.points.len()])
                } else if p.potentials.len() != p.points.len() {
                    r.push(ViolationKind::Potential, format!("{} potentials for {} points", p.potentials.len(), p.points.len()));
                    None
                } else {
                    Some(p.potentials.clone())
                };
                (r, pots)
            }
            Front::Pl(f) => {
                if !f.check_structure(&mut r) {
                    return (r, None);
                }
                let pots = f.check_potentials(&mut r);
                f.check_generic(&mut r);
                (r, pots)
            }
        }
    }

    /// Validates and fills in normalized potentials.
    pub fn prepare(self) -> Result<Front, ValidationReport> {
        let (r, pots) = self.check();
        if !r.is_valid() {
            return Err(r);
        }
        let pots = pots.expect("valid fronts have potentials");
        Ok(match self {
            Front::Point(p) => Front::Point(PointFront { potentials: pots, ..p }),
            Front::Pl(f) => Front::Pl(PlFront { potentials: pots, ..f }),
        })
    }

    pub fn potentials(&self) -> &[i64] {
        match self {
            Front::Point(p) => &p.potentials,
            Front::Pl(f) => &f.potentials,
        }
    }

    pub fn component_count(&self) -> usize {
        match self {
            Front::Point(p) => p.points.len(),
            Front::Pl(f) => f.components().len(),
        }
    }

    /// Betti numbers of the Legendrian: `(m)` for `m` points, `(c, c)` for `c` circles.
    pub fn betti(&self) -> Vec<usize> {
        match self {
            Front::Point(p) => vec![p.points.len()],
            Front::Pl(f) => {
                let c = f.components().len();
                vec![c, c]
            }
        }
    }

    /// Vertical translation by `u`.
    pub fn translated(&self, u: &Q) -> Front {
        match self {
            Front::Point(p) => Front::Point(PointFront { points: p.points.iter().map(|t| t + u).collect(), ..p.clone() }),
            Front::Pl(f) => Front::Pl(f.translated(u)),
        }
    }

    /// Reflection `t -> -t`; potentials are recomputed on preparation.
    pub fn negated(&self) -> Front {
        match self {
            Front::Point(p) => Front::Point(PointFront {
                points: p.points.iter().rev().map(|t| -t).collect(),
                potentials: p.potentials.iter().rev().map(|d| -d).collect(),
            }),
            Front::Pl(f) => Front::Pl(PlFront {
                sheets: f.sheets.iter().map(Sheet::negated).collect(),
                cusps: f.cusps.clone(),
                potentials: f.potentials.iter().map(|d| -d).collect(),
            }),
        }
    }

    /// Lowest and highest `t` attained.
    pub fn t_range(&self) -> (Q, Q) {
        let ts: Vec<&Q> = match self {
            Front::Point(p) => p.points.iter().collect(),
            Front::Pl(f) => f.sheets.iter().flat_map(|s| s.breakpoints.iter().map(|b| &b.1)).collect(),
        };
        let lo = ts.iter().min().map(|q| (*q).clone()).unwrap_or_default();
        let hi = ts.iter().max().map(|q| (*q).clone()).unwrap_or_default();
        (lo, hi)
    }
}
