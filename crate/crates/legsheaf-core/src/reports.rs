//! Theorem-level verdicts: Betti bounds on chord counts, graded Morse
//! inequalities, displacement bounds and compact-support diagnostics.
//!
//! Every report lists its hypotheses. A failed hypothesis makes the
//! verdict [`Verdict::Inapplicable`], whatever the inequalities say.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cellsheaf::{check_ss, front_complex, microlocal_rank, CellSheaf, MicrolocalRank};
use crate::exactalg::{Dims, Field};
use crate::fronts::{chord_degree, enumerate_chords, min_chord_lengths, mixed_chords, Chord, Front, Witness};
use crate::homengine::hom_plus;
use crate::persistengine::{barcode, PersistenceProblem};
use crate::q::{fmt_q_short, Ext, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inapplicable,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inapplicable => "inapplicable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

/// `lhs >= rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub label: String,
    pub lhs: i64,
    pub rhs: i64,
}

impl Inequality {
    pub fn holds(&self) -> bool {
        self.lhs >= self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub theorem: &'static str,
    pub field: String,
    pub hypotheses: Vec<Hypothesis>,
    pub inequalities: Vec<Inequality>,
    pub verdict: Verdict,
    pub diagnostics: Vec<String>,
}

impl TheoremReport {
    fn new(theorem: &'static str, field: String, hypotheses: Vec<Hypothesis>, inequalities: Vec<Inequality>, diagnostics: Vec<String>) -> Self {
        let mut r = TheoremReport { theorem, field, hypotheses, inequalities, verdict: Verdict::Inapplicable, diagnostics };
        r.verdict = r.recompute();
        r
    }

    /// The verdict implied by the stored hypotheses and inequalities.
    pub fn recompute(&self) -> Verdict {
        if self.hypotheses.iter().any(|h| !h.holds) {
            Verdict::Inapplicable
        } else if self.inequalities.iter().all(Inequality::holds) {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn hyp(name: &'static str, holds: bool, detail: impl Into<String>) -> Hypothesis {
    Hypothesis { name, holds, detail: detail.into() }
}

/// Front, support and microlocal hypotheses shared by every theorem.
struct Setup {
    front: Option<Front>,
    hypotheses: Vec<Hypothesis>,
    rank: Option<MicrolocalRank>,
}

fn setup<K: Field>(f: &Front, s: &CellSheaf<K>, need_pure: bool) -> Setup {
    let mut hs = Vec::new();
    let front = match f.clone().prepare() {
        Ok(front) => {
            hs.push(hyp("front is valid", true, ""));
            Some(front)
        }
        Err(r) => {
            hs.push(hyp("front is valid", false, format!("{r}")));
            None
        }
    };
    let Some(front) = front else {
        return Setup { front: None, hypotheses: hs, rank: None };
    };
    let on_front = *s.complex == front_complex(&front);
    hs.push(hyp("sheaf lives on the front's cell complex", on_front, ""));
    if !on_front {
        return Setup { front: Some(front), hypotheses: hs, rank: None };
    }
    let compact = s.compactly_supported();
    hs.push(hyp(
        "support is compact",
        compact,
        if compact { "" } else { "nonzero stalk on an unbounded cell" },
    ));
    let ss = check_ss(s, &front);
    let detail: Vec<String> = ss.violations.iter().filter(|v| v.kind != crate::cellsheaf::SsViolationKind::NonCompact).map(|v| v.message.clone()).collect();
    hs.push(hyp("singular support lies on the front", ss.is_locally_valid(), detail.join("; ")));
    let rank = match microlocal_rank(s, &front) {
        Ok(r) => {
            let nonzero = r.components.iter().all(|d| !d.is_empty());
            hs.push(hyp("microstalk is nonzero on every component", nonzero, format!("{:?}", r.components)));
            if need_pure {
                hs.push(hyp("sheaf is pure", r.pure, format!("{:?}", r.components)));
            }
            Some(r)
        }
        Err(e) => {
            hs.push(hyp("microstalk is locally constant", false, format!("{e}")));
            None
        }
    };
    Setup { front: Some(front), hypotheses: hs, rank }
}

fn chords_with_degrees(f: &Front) -> Vec<(Chord, i32)> {
    let chords = enumerate_chords(f).unwrap_or_default();
    chords.into_iter().filter_map(|c| chord_degree(f, &c).ok().map(|d| (c, d))).collect()
}

fn counts(chords: &[(Chord, i32)]) -> BTreeMap<i32, i64> {
    let mut m = BTreeMap::new();
    for (_, d) in chords {
        *m.entry(*d).or_insert(0) += 1;
    }
    m
}

fn get(m: &BTreeMap<i32, i64>, k: i32) -> i64 {
    *m.get(&k).unwrap_or(&0)
}

/// `|Q_i| + |Q_{n-i}| >= b_i` for every `i` and `2|Q| >= sum b_i`.
pub fn betti_bound<K: Field>(f: &Front, s: &CellSheaf<K>) -> TheoremReport {
    let st = setup(f, s, true);
    let mut ineq = Vec::new();
    let mut diag = Vec::new();
    if let Some(front) = &st.front {
        let chords = chords_with_degrees(front);
        let q = counts(&chords);
        let betti = front.betti();
        let n = front.n();
        for (i, b) in betti.iter().enumerate() {
            let i = i as i32;
            ineq.push(Inequality {
                label: format!("|Q_{i}| + |Q_{}| >= b_{i}", n - i),
                lhs: get(&q, i) + get(&q, n - i),
                rhs: *b as i64,
            });
        }
        ineq.push(Inequality {
            label: String::from("2|Q| >= sum b_i"),
            lhs: 2 * chords.len() as i64,
            rhs: betti.iter().sum::<usize>() as i64,
        });
        diag.push(format!("chord counts by degree: {q:?}"));
        diag.push(format!("Betti numbers: {betti:?}"));
    }
    TheoremReport::new("betti-bound", s.field().name(), st.hypotheses, ineq, diag)
}

fn hom_dims(a: &Dims, b: &Dims) -> Dims {
    let mut out = Dims::new();
    for (i, x) in a {
        for (j, y) in b {
            *out.entry(j - i).or_insert(0) += x * y;
        }
    }
    out
}

/// Chord weights `sum_c dim Hom^i(mu_top, mu_bottom)` placed in degree
/// `deg(c) + i`; for a pure sheaf of rank `r` this is `r^2 |Q_j|`.
fn chord_weights(front: &Front, chords: &[(Chord, i32)], r: &MicrolocalRank) -> BTreeMap<i32, i64> {
    let comp_of: Vec<usize> = match front {
        Front::Point(p) => (0..p.points.len()).collect(),
        Front::Pl(pl) => pl.component_of(),
    };
    let mut w = BTreeMap::new();
    for (c, d) in chords {
        let (top, bottom) = match c.witness {
            Witness::Points { bottom, top } | Witness::Sheets { bottom, top } => (top, bottom),
        };
        for (i, v) in hom_dims(&r.components[comp_of[top]], &r.components[comp_of[bottom]]) {
            *w.entry(d + i).or_insert(0) += v as i64;
        }
    }
    w
}

/// Strong Morse inequalities
/// `sum_{j<=k} (-1)^{k-j} w_j >= sum_{j<=k} (-1)^{k-j} dim H^j Hom_+(F, F)`
/// and their degreewise corollary, where `w` weighs chords by the microstalk
/// Hom.
pub fn morse_inequalities<K: Field>(f: &Front, s: &CellSheaf<K>) -> TheoremReport {
    let st = setup(f, s, false);
    let mut ineq = Vec::new();
    let mut diag = Vec::new();
    let ready = st.hypotheses.iter().all(|h| h.holds);
    if let (Some(front), Some(r), true) = (&st.front, &st.rank, ready) {
        let chords = chords_with_degrees(front);
        let w = chord_weights(front, &chords, r);
        match hom_plus(s, s) {
            Ok(h) => {
                let h: BTreeMap<i32, i64> = h.into_iter().map(|(k, v)| (k, v as i64)).collect();
                let degrees: BTreeSet<i32> = w.keys().chain(h.keys()).copied().collect();
                if let (Some(&lo), Some(&hi)) = (degrees.first(), degrees.last()) {
                    for k in lo..=hi {
                        let alt = |m: &BTreeMap<i32, i64>| (lo..=k).map(|j| if (k - j) % 2 == 0 { get(m, j) } else { -get(m, j) }).sum::<i64>();
                        ineq.push(Inequality { label: format!("alternating sum up to degree {k}"), lhs: alt(&w), rhs: alt(&h) });
                    }
                    for j in lo..=hi {
                        ineq.push(Inequality { label: format!("degree {j}"), lhs: get(&w, j), rhs: get(&h, j) });
                    }
                }
                if !r.pure {
                    diag.push(String::from("impure microstalk: chords weighted by dim Hom of microstalks"));
                }
                diag.push(format!("chord weights: {w:?}"));
                diag.push(format!("Hom_+(F, F): {h:?}"));
            }
            Err(e) => diag.push(format!("Hom_+ failed: {e}")),
        }
    }
    TheoremReport::new("morse-inequalities", s.field().name(), st.hypotheses, ineq, diag)
}

/// Chord count between `f` and a perturbation `g` against the Betti sum
/// over the degrees whose minimal chord length exceeds `eps`. When given,
/// `g_sheaf` is the sheaf carried along to `g`; bars of `Hom(F, G)` longer
/// than `eps` are then counted against the chords.
pub fn displacement_bound<K: Field>(f: &Front, s: &CellSheaf<K>, g: &Front, g_sheaf: Option<&CellSheaf<K>>, eps: &Q) -> TheoremReport {
    let mut st = setup(f, s, true);
    let mut ineq = Vec::new();
    let mut diag = Vec::new();
    let g = match g.clone().prepare() {
        Ok(g) => Some(g),
        Err(r) => {
            st.hypotheses.push(hyp("perturbed front is valid", false, format!("{r}")));
            None
        }
    };
    if let (Some(front), Some(g)) = (&st.front, &g) {
        let mixed = mixed_chords(front, g);
        let isolated = mixed.parallel.is_empty() && mixed.cusp_pairs.is_empty();
        let detail = if isolated {
            String::new()
        } else {
            format!("{} parallel overlaps and {} cusps over a common x", mixed.parallel.len(), mixed.cusp_pairs.len())
        };
        st.hypotheses.push(hyp("chords between the fronts are isolated", isolated, detail));
        let chords = chords_with_degrees(front);
        let plain: Vec<Chord> = chords.iter().map(|(c, _)| c.clone()).collect();
        let c = min_chord_lengths(front, &plain);
        let n = front.n();
        let betti = front.betti();
        let mut order: Vec<(i32, Ext)> = (0..=n).map(|j| (j, c.get(&j).cloned().unwrap_or(Ext::PosInf))).collect();
        order.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        let eps_ext = Ext::Fin(eps.clone());
        let kept: Vec<i32> = order.iter().take_while(|(_, cj)| eps_ext < *cj).map(|(j, _)| *j).collect();
        let count = mixed.chords.len() as i64;
        diag.push(format!(
            "ordered c_j: {}",
            order.iter().map(|(j, cj)| format!("c_{j} = {}", cj.fmt_short())).collect::<Vec<_>>().join(", ")
        ));
        if kept.is_empty() {
            diag.push(format!("eps = {} exceeds every c_j, so the bound is vacuous", fmt_q_short(eps)));
        } else {
            let bound: i64 = kept.iter().map(|&j| *betti.get(j as usize).unwrap_or(&0) as i64).sum();
            ineq.push(Inequality { label: format!("|Q(L, L')| >= sum of b_j over j in {kept:?}"), lhs: count, rhs: bound });
        }
        let ready = st.hypotheses.iter().all(|h| h.holds);
        if let (true, Some(g_sheaf)) = (ready, g_sheaf) {
            match PersistenceProblem::new(front, s.clone(), g, g_sheaf.clone()).and_then(|p| barcode(&p)) {
                Ok(bc) => {
                    let mut ends: BTreeSet<Q> = BTreeSet::new();
                    for b in bc.bars() {
                        if b.length().is_some_and(|l| l > *eps) {
                            ends.extend([b.start.fin().cloned(), b.end.fin().cloned()].into_iter().flatten());
                        }
                    }
                    let survival = ends.len() as i64;
                    diag.push(format!("endpoints of bars longer than eps: {survival}"));
                    ineq.push(Inequality { label: String::from("chord count >= surviving bar endpoints"), lhs: count, rhs: survival });
                }
                Err(e) => diag.push(format!("barcode failed: {e}")),
            }
        }
    }
    TheoremReport::new("displacement-bound", s.field().name(), st.hypotheses, ineq, diag)
}

/// Whether the theorems apply: compact support, a microstalk on every
/// component and purity.
pub fn support_diagnostics<K: Field>(f: &Front, s: &CellSheaf<K>) -> TheoremReport {
    let st = setup(f, s, true);
    let unbounded: Vec<String> = s
        .complex
        .cells
        .iter()
        .enumerate()
        .filter(|(i, c)| !c.bounded && !s.stalk(*i).is_zero())
        .map(|(i, _)| format!("cell {i}"))
        .collect();
    let diag = if unbounded.is_empty() {
        alloc::vec![String::from("every unbounded cell has zero stalk")]
    } else {
        alloc::vec![format!("nonzero stalks on unbounded cells: {}", unbounded.join(", "))]
    };
    TheoremReport::new("support", s.field().name(), st.hypotheses, Vec::new(), diag)
}
