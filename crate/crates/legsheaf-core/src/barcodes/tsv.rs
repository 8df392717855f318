use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::{Bar, BarError, Barcode};
use crate::q::{qi, Ext, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TsvError {
    pub line: usize,
    pub message: String,
}

/// One line `degree<TAB>start<TAB>end<TAB>multiplicity` per bar.
pub fn to_tsv(b: &Barcode) -> String {
    let mut s = String::new();
    for bar in b.bars() {
        s.push_str(&format!("{}\t{}\t{}\t{}\n", bar.degree, bar.start.fmt_short(), bar.end.fmt_short(), bar.mult));
    }
    s
}

/// Inverse of [`to_tsv`]. Blank lines and lines starting with `#` are skipped.
pub fn parse_tsv(text: &str) -> Result<Barcode, TsvError> {
    let mut bars = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |m: &str| TsvError { line: k + 1, message: String::from(m) };
        let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
        if cols.len() != 4 {
            return Err(err("expected 4 tab-separated columns"));
        }
        let degree: i32 = cols[0].parse().map_err(|_| err("bad degree"))?;
        let start = Ext::parse(cols[1]).ok_or_else(|| err("bad start"))?;
        let end = Ext::parse(cols[2]).ok_or_else(|| err("bad end"))?;
        let mult: usize = cols[3].parse().map_err(|_| err("bad multiplicity"))?;
        let bar = Bar::new(degree, start, end, mult).map_err(|e| match e {
            BarError::EmptyInterval => err("start must be below end"),
            BarError::ZeroMultiplicity => err("multiplicity must be positive"),
        })?;
        bars.push(bar);
    }
    Ok(Barcode::new(bars))
}

/// Static SVG with one segment per bar, grouped by degree. Coordinates are
/// integers: values are scaled by the common denominator of all endpoints.
pub fn to_svg(b: &Barcode) -> String {
    let ends = b.endpoints();
    let den = ends.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
    let (lo, hi) = match (ends.first(), ends.last()) {
        (Some(a), Some(z)) => (a.clone(), z.clone()),
        _ => (qi(0), qi(1)),
    };
    let span = if hi > lo { &hi - &lo } else { qi(1) };
    let pad = &span / qi(4);
    let left = &lo - &pad;
    let right = &hi + &pad;
    let scale = |v: &Q| -> BigInt { ((v - &left) * Q::from_integer(den.clone()) * qi(100)).to_integer() };
    let width = scale(&right);
    let row = (&width / BigInt::from(40)).max(BigInt::one());
    let x = |e: &Ext| -> BigInt {
        match e {
            Ext::NegInf => BigInt::from(0),
            Ext::PosInf => width.clone(),
            Ext::Fin(v) => scale(v),
        }
    };
    let mut body = String::new();
    let mut y = BigInt::one() * &row;
    let mut last_degree = None;
    for bar in b.bars() {
        if last_degree != Some(bar.degree) {
            if last_degree.is_some() {
                y += &row;
            }
            body.push_str(&format!(
                "<text x=\"0\" y=\"{}\" font-size=\"{}\">degree {}</text>\n",
                y,
                row,
                bar.degree
            ));
            y += &row;
            last_degree = Some(bar.degree);
        }
        for _ in 0..bar.mult {
            body.push_str(&format!(
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"{}\"/>\n",
                x(&bar.start),
                y,
                x(&bar.end),
                y,
                (&row / BigInt::from(3)).max(BigInt::one()).abs()
            ));
            y += &row;
        }
    }
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {} {}\">\n{}</svg>\n",
        width,
        &y + &row,
        body
    )
}
