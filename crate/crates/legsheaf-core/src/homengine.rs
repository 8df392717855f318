//! Derived global sections and Homs of cell sheaves, the complexes
//! `Hom_+` and `Hom_-`, and the cone of the evaluation map.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::format;

use crate::cellsheaf::{dual, evaluation, internal_hom, CellSheaf, Cobar, SheafError};
use crate::exactalg::{euler, Dims, Field, SparseComplex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomError {
    /// A sheaf has a nonzero stalk on an unbounded cell.
    NonCompact(&'static str),
    Sheaf(SheafError),
}

impl core::fmt::Display for HomError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            HomError::NonCompact(w) => write!(f, "{w} does not have compact support"),
            HomError::Sheaf(e) => write!(f, "{e}"),
        }
    }
}

impl From<SheafError> for HomError {
    fn from(e: SheafError) -> Self {
        HomError::Sheaf(e)
    }
}

fn dim(d: &Dims, i: i32) -> usize {
    *d.get(&i).unwrap_or(&0)
}

/// `RΓ(S)` as the cobar complex of `(k, S)`.
pub fn global_sections<K: Field>(s: &CellSheaf<K>) -> SparseComplex<K> {
    Cobar::build(&CellSheaf::constant(s.complex.clone(), s.field()), s, None).complex
}

/// `RHom(F, G)` as a cobar complex.
pub fn rhom<K: Field>(f: &CellSheaf<K>, g: &CellSheaf<K>) -> Result<SparseComplex<K>, HomError> {
    f.same_complex(g)?;
    functorial(f, "the first sheaf")?;
    functorial(g, "the second sheaf")?;
    Ok(Cobar::build(f, g, None).complex)
}

fn functorial<K: Field>(s: &CellSheaf<K>, which: &str) -> Result<(), HomError> {
    match s.functoriality_failures().first() {
        None => Ok(()),
        Some((a, b, c)) => Err(HomError::Sheaf(SheafError::Data(format!(
            "{which} is not a functor: maps {a} -> {b} -> {c} do not compose to {a} -> {c}"
        )))),
    }
}

fn compact<K: Field>(f: &CellSheaf<K>, g: &CellSheaf<K>) -> Result<(), HomError> {
    f.same_complex(g)?;
    functorial(f, "the first sheaf")?;
    functorial(g, "the second sheaf")?;
    if !f.compactly_supported() {
        return Err(HomError::NonCompact("the first sheaf"));
    }
    if !g.compactly_supported() {
        return Err(HomError::NonCompact("the second sheaf"));
    }
    Ok(())
}

/// Cohomology of `Hom_+(F, G) = RHom(F, G)`.
pub fn hom_plus<K: Field>(f: &CellSheaf<K>, g: &CellSheaf<K>) -> Result<Dims, HomError> {
    compact(f, g)?;
    Ok(Cobar::build(f, g, None).cohomology())
}

/// Cohomology of `Hom_-(F, G) = RΓ(D'F ⊗ G)`.
pub fn hom_minus<K: Field>(f: &CellSheaf<K>, g: &CellSheaf<K>) -> Result<Dims, HomError> {
    compact(f, g)?;
    let df = dual(f);
    Ok(global_sections(&df.sheaf.tensor(g)?).cohomology())
}

/// The evaluation triangle `Hom_- -> Hom_+ -> cone`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatoTriangle {
    pub hom_minus: Dims,
    /// Cohomology of `RΓ(Hom(F, G))`, which is `Hom_+` again.
    pub hom_plus: Dims,
    pub ranks: Dims,
    pub cone: Dims,
}

/// Applies `RΓ` to the evaluation map `D'F ⊗ G -> Hom(F, G)`.
pub fn sato_triangle<K: Field>(f: &CellSheaf<K>, g: &CellSheaf<K>) -> Result<SatoTriangle, HomError> {
    compact(f, g)?;
    let df = dual(f);
    let h = internal_hom(f, g);
    let ev = evaluation(f, g, &df, &h);
    let k = CellSheaf::constant(f.complex.clone(), f.field());
    let src = Cobar::build(&k, &ev.source, None);
    let tgt = Cobar::build(&k, &ev.target, None);
    let m = Cobar::postcompose(&src, &tgt, |s| ev.comps[s].clone());
    Ok(SatoTriangle {
        hom_minus: src.cohomology(),
        hom_plus: tgt.cohomology(),
        ranks: m.cohomology_ranks(),
        cone: m.cone().cohomology(),
    })
}

/// Cohomology of the cone of the evaluation map.
pub fn sabloff_cone<K: Field>(f: &CellSheaf<K>, g: &CellSheaf<K>) -> Result<Dims, HomError> {
    Ok(sato_triangle(f, g)?.cone)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityCheck {
    pub ok: bool,
    /// `(i, dim H^i Hom_+(F, G), dim H^{n+1-i} Hom_-(G, F))` where they differ.
    pub mismatches: Vec<(i32, usize, usize)>,
}

/// Compares `H^i Hom_+(F, G)` with `H^{n+1-i} Hom_-(G, F)`.
pub fn duality_compare(plus_fg: &Dims, minus_gf: &Dims, n: i32) -> DualityCheck {
    let mut keys: Vec<i32> = plus_fg.keys().copied().collect();
    keys.extend(minus_gf.keys().map(|j| n + 1 - j));
    keys.sort_unstable();
    keys.dedup();
    let mismatches: Vec<(i32, usize, usize)> =
        keys.into_iter().map(|i| (i, dim(plus_fg, i), dim(minus_gf, n + 1 - i))).filter(|(_, a, b)| a != b).collect();
    DualityCheck { ok: mismatches.is_empty(), mismatches }
}

pub fn duality_check<K: Field>(f: &CellSheaf<K>, g: &CellSheaf<K>, n: i32) -> Result<DualityCheck, HomError> {
    Ok(duality_compare(&hom_plus(f, g)?, &hom_minus(g, f)?, n))
}

/// Whether cone dimensions fit the long exact sequence of `Hom_- -> Hom_+`.
pub fn triangle_consistent(t: &SatoTriangle) -> bool {
    let mut keys: Vec<i32> = t.hom_minus.keys().chain(t.hom_plus.keys()).chain(t.cone.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    let (lo, hi) = match (keys.first(), keys.last()) {
        (Some(a), Some(b)) => (*a - 1, *b + 1),
        _ => return true,
    };
    (lo..=hi).all(|i| {
        let r = |j| dim(&t.ranks, j);
        let expect = dim(&t.hom_plus, i) as i64 - r(i) as i64 + dim(&t.hom_minus, i + 1) as i64 - r(i + 1) as i64;
        expect == dim(&t.cone, i) as i64 && r(i) <= dim(&t.hom_plus, i).min(dim(&t.hom_minus, i))
    }) && euler(&t.hom_plus) - euler(&t.hom_minus) == euler(&t.cone)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomReport {
    pub hom_plus: Dims,
    pub hom_minus: Dims,
    pub sato_cone_dims: Dims,
    pub duality_ok: bool,
    pub triangle_ok: bool,
    pub diagnostics: Vec<String>,
}

/// `Hom_±(F, G)`, the evaluation cone, and the duality and triangle checks
/// for a Legendrian of dimension `n`.
pub fn hom_report<K: Field>(f: &CellSheaf<K>, g: &CellSheaf<K>, n: i32) -> Result<HomReport, HomError> {
    let tri = sato_triangle(f, g)?;
    let plus = hom_plus(f, g)?;
    let minus_gf = if core::ptr::eq(f, g) { tri.hom_minus.clone() } else { hom_minus(g, f)? };
    let dc = duality_compare(&plus, &minus_gf, n);
    let mut diagnostics = Vec::new();
    for (i, a, b) in &dc.mismatches {
        diagnostics.push(format!("duality fails in degree {i}: dim H^{i} Hom_+(F, G) = {a} but dim H^{} Hom_-(G, F) = {b}", n + 1 - i));
    }
    let mut triangle_ok = triangle_consistent(&tri);
    if tri.hom_plus != plus {
        triangle_ok = false;
        diagnostics.push(format!("sections of the internal Hom give {:?}, not Hom_+ = {plus:?}", tri.hom_plus));
    }
    if !triangle_consistent(&tri) {
        diagnostics.push(String::from("cone dimensions do not fit the long exact sequence"));
    }
    Ok(HomReport {
        hom_plus: plus,
        hom_minus: tri.hom_minus.clone(),
        sato_cone_dims: tri.cone,
        duality_ok: dc.ok,
        triangle_ok,
        diagnostics,
    })
}

