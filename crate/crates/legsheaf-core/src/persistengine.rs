//! The persistence module `u -> Hom(F, T_u G)` and its barcode.
//!
//! Stalks are computed only at non-critical offsets, one per gap between
//! critical values. Structure maps come from the propagation morphism
//! `T_u G -> T_{u'} G`, realized on the overlay of `F`, `T_u G` and
//! `T_{u'} G`, and pushed through the Hom complex.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::barcodes::{barcode_from_rank_invariant, interleaving_distance, Barcode, RankError, RankInvariant};
use crate::cellsheaf::{arrange, front_complex, microlocal_rank, propagation_map, ArrangeError, CellSheaf, Cobar, SheafError};
use crate::exactalg::{Dims, Field, SparseComplex};
use crate::fronts::{chord_degree, enumerate_chords, mixed_chords, Front};
use crate::q::{fmt_q_short, mid, q, qi, Ext, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PersistError {
    /// A sheaf has a nonzero stalk on an unbounded cell.
    NonCompact(&'static str),
    /// A sheaf does not live on the complex of its front.
    WrongComplex(&'static str),
    InvalidFront(String),
    /// The skyscraper point lies on the front.
    OnFront,
    /// Offset is a critical value.
    Critical(Q),
    Arrange(ArrangeError),
    Sheaf(SheafError),
    Rank(RankError),
}

impl core::fmt::Display for PersistError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            PersistError::NonCompact(w) => write!(f, "{w} does not have compact support"),
            PersistError::WrongComplex(w) => write!(f, "{w} does not live on the cell complex of its front"),
            PersistError::InvalidFront(m) => write!(f, "invalid front: {m}"),
            PersistError::OnFront => f.write_str("the skyscraper point lies on the front"),
            PersistError::Critical(u) => write!(f, "u = {} is a critical value", fmt_q_short(u)),
            PersistError::Arrange(e) => write!(f, "{}", e.message),
            PersistError::Sheaf(e) => write!(f, "{e}"),
            PersistError::Rank(e) => write!(f, "rank invariant is inconsistent: {e:?}"),
        }
    }
}

impl From<SheafError> for PersistError {
    fn from(e: SheafError) -> Self {
        PersistError::Sheaf(e)
    }
}

impl From<ArrangeError> for PersistError {
    fn from(e: ArrangeError) -> Self {
        PersistError::Arrange(e)
    }
}

impl From<RankError> for PersistError {
    fn from(e: RankError) -> Self {
        PersistError::Rank(e)
    }
}

/// First argument of the Hom.
#[derive(Clone, Debug)]
pub enum Source<K: Field> {
    Sheaf { front: Front, sheaf: CellSheaf<K> },
    /// The skyscraper sheaf at `(x, t)`.
    Skyscraper { x: Q, t: Q },
}

/// `Hom(F, T_u G)` as `u` varies.
#[derive(Clone, Debug)]
pub struct PersistenceProblem<K: Field> {
    pub source: Source<K>,
    pub front: Front,
    pub sheaf: CellSheaf<K>,
}

fn prepared(f: &Front) -> Result<Front, PersistError> {
    f.clone().prepare().map_err(|r| PersistError::InvalidFront(format!("{r}")))
}

fn checked<K: Field>(f: &Front, s: &CellSheaf<K>, which: &'static str) -> Result<Front, PersistError> {
    let f = prepared(f)?;
    if *s.complex != front_complex(&f) {
        return Err(PersistError::WrongComplex(which));
    }
    if !s.compactly_supported() {
        return Err(PersistError::NonCompact(which));
    }
    Ok(f)
}

impl<K: Field> PersistenceProblem<K> {
    pub fn new(f_front: &Front, f: CellSheaf<K>, g_front: &Front, g: CellSheaf<K>) -> Result<Self, PersistError> {
        let ff = checked(f_front, &f, "the first sheaf")?;
        let gf = checked(g_front, &g, "the second sheaf")?;
        if core::mem::discriminant(&ff) != core::mem::discriminant(&gf) {
            return Err(PersistError::InvalidFront(String::from("point and PL fronts cannot be paired")));
        }
        Ok(PersistenceProblem { source: Source::Sheaf { front: ff, sheaf: f }, front: gf, sheaf: g })
    }

    /// `Hom(k_{(x, t)}, T_u G)`.
    pub fn skyscraper(x: Q, t: Q, g_front: &Front, g: CellSheaf<K>) -> Result<Self, PersistError> {
        let gf = checked(g_front, &g, "the sheaf")?;
        if g.complex.on_curve(g.complex.locate(&x, &t)) {
            return Err(PersistError::OnFront);
        }
        Ok(PersistenceProblem { source: Source::Skyscraper { x, t }, front: gf, sheaf: g })
    }

    /// The same problem with `F` and `G` both given by `f` on `front`.
    pub fn self_problem(front: &Front, f: CellSheaf<K>) -> Result<Self, PersistError> {
        Self::new(front, f.clone(), front, f)
    }

    /// Whether both arguments are the same sheaf on the same front.
    pub fn is_self(&self) -> bool {
        match &self.source {
            Source::Sheaf { front, sheaf } => *front == self.front && *sheaf.complex == *self.sheaf.complex && sheaf.stalks() == self.sheaf.stalks(),
            Source::Skyscraper { .. } => false,
        }
    }
}

/// Heights of the front above `x`, cusps included.
fn heights_over(f: &Front, x: &Q) -> Vec<Q> {
    match f {
        Front::Point(p) => p.points.clone(),
        Front::Pl(pl) => pl.sheets.iter().filter(|s| s.covers(x)).filter_map(|s| s.value(x)).collect(),
    }
}

/// Offsets at which the overlay of `F` and `T_u G` degenerates, sorted.
pub fn critical_values<K: Field>(p: &PersistenceProblem<K>) -> Vec<Q> {
    let set: BTreeSet<Q> = match &p.source {
        Source::Sheaf { front, .. } => mixed_chords(front, &p.front).degenerate_values().into_iter().collect(),
        Source::Skyscraper { x, t } => heights_over(&p.front, x).into_iter().map(|h| t - h).collect(),
    };
    set.into_iter().collect()
}

/// Offsets `u` at which a cusp of one front lies on the other front
/// translated by `u`. Away from chords these do not move bar endpoints,
/// but the overlay is not generic there.
fn cusp_contacts(f: &Front, g: &Front) -> BTreeSet<Q> {
    let mut out = BTreeSet::new();
    if let (Front::Pl(a), Front::Pl(b)) = (f, g) {
        for c in a.cusp_geoms() {
            out.extend(heights_over(g, &c.x).into_iter().map(|h| &c.t - h));
        }
        for c in b.cusp_geoms() {
            out.extend(heights_over(f, &c.x).into_iter().map(|h| h - &c.t));
        }
    }
    out
}

/// The Hom complex at a non-critical offset `u`.
pub fn slice<K: Field>(p: &PersistenceProblem<K>, u: &Q) -> Result<SparseComplex<K>, PersistError> {
    if critical_values(p).contains(u) {
        return Err(PersistError::Critical(u.clone()));
    }
    slice_unchecked(p, u)
}

fn slice_unchecked<K: Field>(p: &PersistenceProblem<K>, u: &Q) -> Result<SparseComplex<K>, PersistError> {
    match &p.source {
        Source::Sheaf { front, sheaf } => {
            let cx = Arc::new(arrange(&[front.clone(), p.front.clone()], &[Q::zero(), u.clone()])?);
            let f = sheaf.pullback(cx.clone(), &Q::zero())?;
            let g = p.sheaf.pullback(cx, u)?;
            Ok(Cobar::build(&f, &g, None).complex)
        }
        Source::Skyscraper { x, t } => {
            let c = p.sheaf.complex.locate(x, &(t - u));
            Ok(p.sheaf.stalk(c).as_sparse().clone())
        }
    }
}

/// Rank of the structure map `M_u -> M_v` for `u < v`, both non-critical.
fn structure_rank<K: Field>(p: &PersistenceProblem<K>, u: &Q, v: &Q) -> Result<Dims, PersistError> {
    let c = v - u;
    match &p.source {
        Source::Sheaf { front, sheaf } => {
            let cx = Arc::new(arrange(&[front.clone(), p.front.clone(), p.front.clone()], &[Q::zero(), u.clone(), v.clone()])?);
            let f = sheaf.pullback(cx.clone(), &Q::zero())?;
            let eta = propagation_map(&p.sheaf.translate(u), &c, cx)?;
            let src = Cobar::build(&f, &eta.source, None);
            let dst = Cobar::build(&f, &eta.target, None);
            Ok(Cobar::postcompose(&src, &dst, |s| eta.comps[s].clone()).cohomology_ranks())
        }
        Source::Skyscraper { x, t } => Ok(p.sheaf.propagate(x, &(t - u), &c)?.cohomology_ranks()),
    }
}

/// Picks one sample per gap so that no difference of two samples is a
/// self-degenerate offset of `G`; those differences are the shifts used by
/// the propagation maps.
fn choose_samples(critical: &[Q], bad: &BTreeSet<Q>, avoid: &BTreeSet<Q>) -> Vec<Q> {
    let m = critical.len();
    let mut out: Vec<Q> = Vec::with_capacity(m + 1);
    for gap in 0..=m {
        let lo = if gap == 0 { None } else { Some(&critical[gap - 1]) };
        let hi = critical.get(gap);
        let candidate = |k: i64| -> Q {
            match (lo, hi) {
                (Some(a), Some(b)) => a + (b - a) * q(k, 2 * k + 1),
                (None, Some(b)) => b - qi(1) - q(k - 1, k + 1),
                (Some(a), None) => a + qi(1) + q(k - 1, k + 1),
                (None, None) => q(k - 1, k),
            }
        };
        let mut k = 1;
        let s = loop {
            let s = if k == 1 {
                match (lo, hi) {
                    (Some(a), Some(b)) => mid(a, b),
                    _ => candidate(1),
                }
            } else {
                candidate(k)
            };
            if (!bad.contains(&s) && out.iter().all(|t| !avoid.contains(&(&s - t).abs()))) || k > 64 {
                break s;
            }
            k += 1;
        };
        out.push(s);
    }
    out
}

/// Stalk dimensions at one sample per gap, adjacent structure ranks, and
/// the longer spans needed to pin down the barcode.
pub fn rank_invariant<K: Field>(p: &PersistenceProblem<K>) -> Result<RankInvariant, PersistError> {
    rank_invariant_with(p, false)
}

/// As [`rank_invariant`], but every span rank is computed from its own
/// propagation map instead of being inferred from adjacent ranks.
pub fn rank_invariant_exhaustive<K: Field>(p: &PersistenceProblem<K>) -> Result<RankInvariant, PersistError> {
    rank_invariant_with(p, true)
}

fn rank_invariant_with<K: Field>(p: &PersistenceProblem<K>, exhaustive: bool) -> Result<RankInvariant, PersistError> {
    let critical = critical_values(p);
    let (bad, avoid) = match &p.source {
        Source::Sheaf { front, .. } => {
            let mut avoid: BTreeSet<Q> = mixed_chords(&p.front, &p.front).degenerate_values().into_iter().collect();
            avoid.extend(cusp_contacts(&p.front, &p.front));
            (cusp_contacts(front, &p.front), avoid.into_iter().map(|v| v.abs()).collect())
        }
        Source::Skyscraper { .. } => (BTreeSet::new(), BTreeSet::new()),
    };
    let samples = choose_samples(&critical, &bad, &avoid);
    let mut stalk_dims = Vec::with_capacity(samples.len());
    for s in &samples {
        stalk_dims.push(slice_unchecked(p, s)?.cohomology());
    }
    let mut structure_ranks = Vec::with_capacity(critical.len());
    for w in samples.windows(2) {
        structure_ranks.push(structure_rank(p, &w[0], &w[1])?);
    }
    let mut span_ranks = BTreeMap::new();
    for i in 0..samples.len() {
        for j in i + 2..samples.len() {
            let alive = (i..j).all(|k| structure_ranks[k].values().any(|&r| r > 0));
            if !alive && !exhaustive {
                break;
            }
            let known = if exhaustive { None } else { infer_span(&stalk_dims, &structure_ranks, i, j) };
            let r = match known {
                Some(r) => r,
                None => structure_rank(p, &samples[i], &samples[j])?,
            };
            span_ranks.insert((i, j), r);
        }
    }
    Ok(RankInvariant { critical, samples, stalk_dims, structure_ranks, span_ranks })
}

fn dim(d: &Dims, k: i32) -> usize {
    *d.get(&k).unwrap_or(&0)
}

/// Rank of the composite `i -> j` in every degree where the adjacent ranks
/// force it: a zero step, injective steps only, surjective steps only, or
/// isomorphisms around a single other step.
fn infer_span(dims: &[Dims], steps: &[Dims], i: usize, j: usize) -> Option<Dims> {
    let degrees: BTreeSet<i32> = dims[i..=j].iter().flat_map(|d| d.keys().copied()).collect();
    let mut out = Dims::new();
    for d in degrees {
        let r: Vec<usize> = (i..j).map(|k| dim(&steps[k], d)).collect();
        let inj = (i..j).all(|k| r[k - i] == dim(&dims[k], d));
        let surj = (i..j).all(|k| r[k - i] == dim(&dims[k + 1], d));
        let non_iso: Vec<usize> = (i..j).filter(|&k| r[k - i] != dim(&dims[k], d) || r[k - i] != dim(&dims[k + 1], d)).collect();
        let v = if r.contains(&0) {
            0
        } else if inj {
            dim(&dims[i], d)
        } else if surj {
            dim(&dims[j], d)
        } else if non_iso.len() == 1 {
            r[non_iso[0] - i]
        } else {
            return None;
        };
        if v > 0 {
            out.insert(d, v);
        }
    }
    Some(out)
}

pub fn barcode<K: Field>(p: &PersistenceProblem<K>) -> Result<Barcode, PersistError> {
    Ok(barcode_from_rank_invariant(&rank_invariant(p)?)?)
}

/// One finite bar endpoint and what the chord data predicts there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndpointCheck {
    pub u: Q,
    /// `ends_j + starts_{j-1}` in each degree `j`.
    pub observed: Dims,
    /// Sum over chords of this length of the shifted microstalk Hom.
    pub predicted: Option<Dims>,
    pub matched: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndpointReport {
    pub checks: Vec<EndpointCheck>,
    /// Chord lengths predicting a nonzero jump where no bar ends or starts.
    pub missing: Vec<Q>,
}

impl EndpointReport {
    pub fn all_matched(&self) -> bool {
        self.missing.is_empty() && self.checks.iter().all(|c| c.matched)
    }
}

fn hom_dims(a: &Dims, b: &Dims) -> Dims {
    let mut out = Dims::new();
    for (i, x) in a {
        for (j, y) in b {
            *out.entry(j - i).or_insert(0) += x * y;
        }
    }
    out.retain(|_, v| *v > 0);
    out
}

fn add_shifted(acc: &mut Dims, d: &Dims, by: i32) {
    for (k, v) in d {
        *acc.entry(k + by).or_insert(0) += v;
    }
}

/// Cone of the restriction across an endpoint: ends in degree `j` and
/// starts in degree `j - 1` both land in degree `j`.
fn jumps(bc: &Barcode) -> BTreeMap<Q, Dims> {
    let mut out: BTreeMap<Q, Dims> = BTreeMap::new();
    for b in bc.bars() {
        if let Ext::Fin(s) = &b.start {
            *out.entry(s.clone()).or_default().entry(b.degree + 1).or_insert(0) += b.mult;
        }
        if let Ext::Fin(e) = &b.end {
            *out.entry(e.clone()).or_default().entry(b.degree).or_insert(0) += b.mult;
        }
    }
    out
}

/// Checks every finite bar endpoint away from `0` against chord lengths.
/// For self-problems the jump at `+l` must be the microstalk Hom shifted
/// by `[-d]` and at `-l` shifted by `[-n + d - 2]`, summed over chords of
/// length `l` and degree `d`.
pub fn verify_endpoints<K: Field>(p: &PersistenceProblem<K>, bc: &Barcode) -> Result<EndpointReport, PersistError> {
    let observed = jumps(bc);
    let critical: BTreeSet<Q> = critical_values(p).into_iter().collect();
    let mut predicted: Option<BTreeMap<Q, Dims>> = None;
    if p.is_self() {
        let f = &p.front;
        let chords = enumerate_chords(f).map_err(|r| PersistError::InvalidFront(format!("{r}")))?;
        let mr = microlocal_rank(&p.sheaf, f)?;
        let comp_of: Vec<usize> = match f {
            Front::Point(pf) => (0..pf.points.len()).collect(),
            Front::Pl(pl) => pl.component_of(),
        };
        let n = f.n();
        let mut pred: BTreeMap<Q, Dims> = BTreeMap::new();
        for c in &chords {
            let d = chord_degree(f, c).map_err(|r| PersistError::InvalidFront(format!("{r}")))?;
            let (top, bottom) = match c.witness {
                crate::fronts::Witness::Points { bottom, top } | crate::fronts::Witness::Sheets { bottom, top } => (top, bottom),
            };
            let mu_top = &mr.components[comp_of[top]];
            let mu_bottom = &mr.components[comp_of[bottom]];
            add_shifted(pred.entry(c.length.clone()).or_default(), &hom_dims(mu_top, mu_bottom), d);
            add_shifted(pred.entry(-c.length.clone()).or_default(), &hom_dims(mu_bottom, mu_top), n - d + 2);
        }
        pred.retain(|_, v| !v.is_empty());
        predicted = Some(pred);
    }
    let mut checks = Vec::new();
    for (u, obs) in &observed {
        if u.is_zero() {
            continue;
        }
        let pr = predicted.as_ref().map(|m| m.get(u).cloned().unwrap_or_default());
        let matched = critical.contains(u) && pr.as_ref().is_none_or(|d| d == obs);
        checks.push(EndpointCheck { u: u.clone(), observed: obs.clone(), predicted: pr, matched });
    }
    let missing = predicted
        .map(|m| m.keys().filter(|u| !observed.contains_key(*u)).cloned().collect())
        .unwrap_or_default();
    Ok(EndpointReport { checks, missing })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub distance: Ext,
    pub budget: Q,
    pub ok: bool,
}

/// Largest vertical displacement between two fronts with the same
/// combinatorics, or `None` when they are not comparable sheet by sheet.
pub fn height_change(a: &Front, b: &Front) -> Option<Q> {
    match (a, b) {
        (Front::Point(p), Front::Point(r)) if p.points.len() == r.points.len() => {
            p.points.iter().zip(&r.points).map(|(x, y)| (x - y).abs()).max().or(Some(Q::zero()))
        }
        (Front::Pl(p), Front::Pl(r)) if p.sheets.len() == r.sheets.len() && p.cusps == r.cusps => {
            let mut best = Q::zero();
            for (s, t) in p.sheets.iter().zip(&r.sheets) {
                if s.x_start() != t.x_start() || s.x_end() != t.x_end() {
                    return None;
                }
                for x in s.xs().chain(t.xs()) {
                    best = best.max((s.value(x)? - t.value(x)?).abs());
                }
            }
            Some(best)
        }
        _ => None,
    }
}

/// Compares the barcodes of two problems whose second fronts differ by a
/// vertical perturbation of size at most `eps`; the budget is `2 eps`.
pub fn stability_check<K: Field>(p: &PersistenceProblem<K>, p2: &PersistenceProblem<K>, eps: &Q) -> Result<StabilityReport, PersistError> {
    let moved = height_change(&p.front, &p2.front)
        .ok_or_else(|| PersistError::InvalidFront(String::from("perturbed front does not match the original sheet by sheet")))?;
    if moved > *eps {
        return Err(PersistError::InvalidFront(format!(
            "perturbation moves heights by {}, more than {}",
            fmt_q_short(&moved),
            fmt_q_short(eps)
        )));
    }
    let distance = interleaving_distance(&barcode(p)?, &barcode(p2)?);
    let budget = eps * qi(2);
    let ok = match &distance {
        Ext::Fin(d) => *d <= budget,
        _ => false,
    };
    Ok(StabilityReport { distance, budget, ok })
}
