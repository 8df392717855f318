//! Rational numbers used for geometry and bar endpoints.

use alloc::string::String;
use alloc::string::ToString;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number.
pub type Q = BigRational;

/// Builds `n/d` from machine integers.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Builds an integer-valued rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"`, or a finite decimal such as `"-1.25"`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((a, b)) = s.split_once('/') {
        let n: BigInt = a.trim().parse().ok()?;
        let d: BigInt = b.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(n, d));
    }
    if let Some((a, b)) = s.split_once('.') {
        if b.is_empty() || !b.bytes().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = a.starts_with('-');
        let ip: BigInt = if a == "-" || a.is_empty() { BigInt::zero() } else { a.parse().ok()? };
        let frac: BigInt = b.parse().ok()?;
        let den = num_traits::pow(BigInt::from(10), b.len());
        let mag = ip.abs() * &den + frac;
        let n = if neg { -mag } else { mag };
        return Some(Q::new(n, den));
    }
    let n: BigInt = s.parse().ok()?;
    Some(Q::from_integer(n))
}

/// Formats as `"p/q"` with `q >= 1` always present.
pub fn fmt_q(x: &Q) -> String {
    let mut s = x.numer().to_string();
    s.push('/');
    s.push_str(&x.denom().to_string());
    s
}

/// Formats integers without a denominator and everything else as `p/q`.
pub fn fmt_q_short(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        fmt_q(x)
    }
}

/// Arithmetic midpoint.
pub fn mid(a: &Q, b: &Q) -> Q {
    (a + b) / qi(2)
}

/// A rational number or one of the two infinities.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ext {
    NegInf,
    Fin(Q),
    PosInf,
}

impl Ext {
    pub fn fin(&self) -> Option<&Q> {
        match self {
            Ext::Fin(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Ext::Fin(_))
    }

    /// Adds a finite offset; infinities are fixed.
    pub fn add(&self, c: &Q) -> Ext {
        match self {
            Ext::Fin(v) => Ext::Fin(v + c),
            e => e.clone(),
        }
    }

    pub fn sub(&self, c: &Q) -> Ext {
        match self {
            Ext::Fin(v) => Ext::Fin(v - c),
            e => e.clone(),
        }
    }

    /// `"-inf"`, `"+inf"` or [`fmt_q_short`].
    pub fn fmt_short(&self) -> String {
        match self {
            Ext::NegInf => String::from("-inf"),
            Ext::PosInf => String::from("+inf"),
            Ext::Fin(v) => fmt_q_short(v),
        }
    }

    /// `"-inf"`, `"+inf"` or [`fmt_q`].
    pub fn fmt(&self) -> String {
        match self {
            Ext::Fin(v) => fmt_q(v),
            e => e.fmt_short(),
        }
    }

    /// Accepts `-inf`, `+inf`, `inf` and anything [`parse_q`] accepts.
    pub fn parse(s: &str) -> Option<Ext> {
        match s.trim() {
            "-inf" => Some(Ext::NegInf),
            "+inf" | "inf" => Some(Ext::PosInf),
            t => parse_q(t).map(Ext::Fin),
        }
    }
}

impl From<Q> for Ext {
    fn from(v: Q) -> Ext {
        Ext::Fin(v)
    }
}

impl PartialEq<Q> for Ext {
    fn eq(&self, other: &Q) -> bool {
        matches!(self, Ext::Fin(v) if v == other)
    }
}

impl PartialOrd<Q> for Ext {
    fn partial_cmp(&self, other: &Q) -> Option<core::cmp::Ordering> {
        Some(match self {
            Ext::NegInf => core::cmp::Ordering::Less,
            Ext::PosInf => core::cmp::Ordering::Greater,
            Ext::Fin(v) => v.cmp(other),
        })
    }
}
