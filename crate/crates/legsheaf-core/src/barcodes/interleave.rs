use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::Barcode;
use crate::q::{qi, Ext, Q};

/// How a feasibility question was settled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Every structure map that must factor is already zero.
    Trivial,
    /// Bar-to-bar matching.
    Matching,
    /// Exhaustive search over 𝔽₂ coefficient matrices.
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub feasible: bool,
    /// The strongest method used on any degree.
    pub method: Method,
}

/// Largest search space explored exhaustively.
const EXACT_LIMIT: usize = 16;

type Iv = (Ext, Ext);

fn shifted(iv: &Iv, c: &Q) -> Iv {
    (iv.0.sub(c), iv.1.sub(c))
}

/// A nonzero degree-zero map `k_(a,b] -> k_(a',b']` exists iff `a' <= a < b' <= b`.
fn hom(src: &Iv, tgt: &Iv) -> bool {
    tgt.0 <= src.0 && src.0 < tgt.1 && tgt.1 <= src.1
}

/// Whether `M -> U_{e+f} M` factors as `M -> U_e N -> U_{e+f} M`.
fn factors(m: &[Iv], n: &[Iv], e: &Q, f: &Q) -> (bool, Method) {
    let s = e + f;
    let long: Vec<usize> = (0..m.len()).filter(|&i| hom(&m[i], &shifted(&m[i], &s))).collect();
    if long.is_empty() {
        return (true, Method::Trivial);
    }
    let a: Vec<Vec<bool>> = n.iter().map(|nj| m.iter().map(|mi| hom(mi, &shifted(nj, e))).collect()).collect();
    let b: Vec<Vec<bool>> = m.iter().map(|mi| n.iter().map(|nj| hom(nj, &shifted(mi, f))).collect()).collect();
    let adj: Vec<Vec<usize>> = long.iter().map(|&i| (0..n.len()).filter(|&j| a[j][i] && b[i][j]).collect()).collect();
    if saturating_matching(&adj, n.len()) {
        return (true, Method::Matching);
    }
    let a_list: Vec<(usize, usize)> =
        (0..n.len()).flat_map(|j| (0..m.len()).map(move |i| (j, i))).filter(|&(j, i)| a[j][i]).collect();
    let b_list: Vec<(usize, usize)> =
        (0..m.len()).flat_map(|i| (0..n.len()).map(move |j| (i, j))).filter(|&(i, j)| b[i][j]).collect();
    if a_list.len().min(b_list.len()) > EXACT_LIMIT {
        return (false, Method::Matching);
    }
    let c: Vec<(usize, usize)> = (0..m.len())
        .flat_map(|ip| (0..m.len()).map(move |i| (ip, i)))
        .filter(|&(ip, i)| hom(&m[i], &shifted(&m[ip], &s)))
        .collect();
    (exact_search(&a_list, &b_list, &c), Method::Exact)
}

/// Kuhn's augmenting paths; true iff every left vertex is matched.
fn saturating_matching(adj: &[Vec<usize>], right: usize) -> bool {
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none() || augment(owner[v].unwrap(), adj, seen, owner) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; right];
    for u in 0..adj.len() {
        let mut seen = vec![false; right];
        if !augment(u, adj, &mut seen, &mut owner) {
            return false;
        }
    }
    true
}

/// Solves `ψ φ = t` over 𝔽₂ by enumerating the smaller factor and solving
/// linearly for the other. `c` lists the composite entries `(i', i)` that can
/// be nonzero.
fn exact_search(a_list: &[(usize, usize)], b_list: &[(usize, usize)], c: &[(usize, usize)]) -> bool {
    let enum_phi = a_list.len() <= b_list.len();
    let (fixed, free) = if enum_phi { (a_list, b_list) } else { (b_list, a_list) };
    let nunk = free.len();
    for mask in 0u64..(1u64 << fixed.len()) {
        let on = |k: usize| mask >> k & 1 == 1;
        let mut rows: Vec<Vec<bool>> = Vec::with_capacity(c.len());
        for &(ip, i) in c {
            let mut row = vec![false; nunk + 1];
            for (k, &(x, y)) in fixed.iter().enumerate() {
                if !on(k) {
                    continue;
                }
                // φ entries are (j, i); ψ entries are (i', j).
                let (j, ok) = if enum_phi { (x, y == i) } else { (y, x == ip) };
                if !ok {
                    continue;
                }
                for (u, &(p, r)) in free.iter().enumerate() {
                    let hit = if enum_phi { p == ip && r == j } else { p == j && r == i };
                    if hit {
                        row[u] ^= true;
                    }
                }
            }
            row[nunk] = ip == i;
            rows.push(row);
        }
        if gf2_solvable(rows, nunk) {
            return true;
        }
    }
    false
}

fn gf2_solvable(mut rows: Vec<Vec<bool>>, nunk: usize) -> bool {
    let mut r = 0;
    for col in 0..nunk {
        if let Some(p) = (r..rows.len()).find(|&k| rows[k][col]) {
            rows.swap(r, p);
            let pivot = rows[r].clone();
            for (k, row) in rows.iter_mut().enumerate() {
                if k != r && row[col] {
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x ^= *y;
                    }
                }
            }
            r += 1;
        }
    }
    rows[r..].iter().all(|row| !row[nunk])
}

/// Decides `(ε, ε')`-interleaving of two barcodes degree by degree.
pub fn interleaving_check_detailed(b1: &Barcode, b2: &Barcode, eps: &Q, eps2: &Q) -> Verdict {
    let mut degrees: BTreeSet<i32> = b1.degrees().into_iter().collect();
    degrees.extend(b2.degrees());
    let mut method = Method::Trivial;
    let rank = |m: Method| match m {
        Method::Trivial => 0,
        Method::Matching => 1,
        Method::Exact => 2,
    };
    for d in degrees {
        let (m, n) = (b1.intervals(d), b2.intervals(d));
        for (ok, how) in [factors(&m, &n, eps, eps2), factors(&n, &m, eps2, eps)] {
            if rank(how) > rank(method) {
                method = how;
            }
            if !ok {
                return Verdict { feasible: false, method };
            }
        }
    }
    Verdict { feasible: true, method }
}

/// True iff `b1` and `b2` are `(ε, ε')`-interleaved: there are maps
/// `M -> U_ε N -> U_{ε+ε'} M` and `N -> U_ε' M -> U_{ε+ε'} N` composing to
/// the structure maps.
pub fn interleaving_check(b1: &Barcode, b2: &Barcode, eps: &Q, eps2: &Q) -> bool {
    interleaving_check_detailed(b1, b2, eps, eps2).feasible
}

/// Smallest positive distance from the point to a threshold hyperplane.
fn slack(d: &[Q], e: &Q, f: &Q) -> Q {
    let s = e + f;
    d.iter()
        .flat_map(|t| [t - e, t - f, t - &s])
        .filter(|x| *x > Q::zero())
        .min()
        .unwrap_or_else(|| qi(4))
}

fn feasible_above(b1: &Barcode, b2: &Barcode, d: &[Q], e: &Q, f: &Q) -> bool {
    let delta = slack(d, e, f) / qi(4);
    interleaving_check(b1, b2, &(e + &delta), &(f + &delta))
}

/// Least `x` in the sorted candidate list with `ok(x)`, assuming `ok` is monotone.
fn first_true(cands: &[Q], ok: impl Fn(&Q) -> bool) -> Option<Q> {
    if cands.is_empty() || !ok(cands.last().unwrap()) {
        return None;
    }
    let (mut lo, mut hi) = (0usize, cands.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if ok(&cands[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Some(cands[lo].clone())
}

/// Closed infimum of `ε + ε'` over interleaving pairs; `+inf` when no pair works.
///
/// Feasibility only changes where `ε`, `ε'` or `ε + ε'` crosses a positive
/// endpoint difference, so the infimum is attained at a vertex of that
/// arrangement. Each vertex is tested just inside the adjacent open cell.
pub fn interleaving_distance(b1: &Barcode, b2: &Barcode) -> Ext {
    if b1 == b2 {
        return Ext::Fin(Q::zero());
    }
    let mut ends = b1.endpoints();
    ends.extend(b2.endpoints());
    ends.sort();
    ends.dedup();
    let mut diffs = BTreeSet::new();
    for (k, x) in ends.iter().enumerate() {
        for y in &ends[k + 1..] {
            diffs.insert(y - x);
        }
    }
    let d: Vec<Q> = diffs.iter().cloned().collect();
    let mut base: Vec<Q> = vec![Q::zero()];
    base.extend(d.iter().cloned());
    let mut best: Option<Q> = None;
    for swap in [false, true] {
        for e in &base {
            if best.as_ref().is_some_and(|b| e >= b) {
                break;
            }
            let mut cands: BTreeSet<Q> = base.iter().cloned().collect();
            cands.extend(d.iter().filter(|s| *s > e).map(|s| s - e));
            let cands: Vec<Q> = cands.into_iter().collect();
            let hit = first_true(&cands, |f| {
                if swap {
                    feasible_above(b1, b2, &d, f, e)
                } else {
                    feasible_above(b1, b2, &d, e, f)
                }
            });
            if let Some(f) = hit {
                let total = e + f;
                if best.as_ref().is_none_or(|b| total < *b) {
                    best = Some(total);
                }
            }
        }
    }
    best.map_or(Ext::PosInf, Ext::Fin)
}
