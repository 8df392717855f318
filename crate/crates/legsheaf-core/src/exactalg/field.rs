use alloc::format;
use alloc::string::String;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::q::Q;

/// A coefficient field together with its element type.
///
/// Values of the implementing type describe one concrete field; two values
/// compare equal exactly when they describe the same field.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Image of a rational number, or `None` if its denominator vanishes.
    fn from_q(&self, v: &Q) -> Option<Self::Elem>;
    fn characteristic(&self) -> u32;
    fn name(&self) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn sign(&self, odd: bool) -> Self::Elem {
        if odd {
            self.neg(&self.one())
        } else {
            self.one()
        }
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Q;

    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn sub(&self, a: &Q, b: &Q) -> Q {
        a - b
    }
    fn neg(&self, a: &Q) -> Q {
        -a
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn inv(&self, a: &Q) -> Q {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn from_i64(&self, v: i64) -> Q {
        Q::from_integer(BigInt::from(v))
    }
    fn from_q(&self, v: &Q) -> Option<Q> {
        Some(v.clone())
    }
    fn characteristic(&self) -> u32 {
        0
    }
    fn name(&self) -> String {
        String::from("Q")
    }
}

/// The prime field `Z/p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Returns `None` unless `p` is prime.
    pub fn new(p: u32) -> Option<Self> {
        if is_prime(p) {
            Some(PrimeField { p })
        } else {
            None
        }
    }

    pub fn f2() -> Self {
        PrimeField { p: 2 }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    fn reduce_big(&self, v: &BigInt) -> u32 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u32().unwrap_or(0)
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + self.p as u64 - *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero");
        // Fermat: a^(p-2)
        let mut base = *a as u64;
        let mut e = self.p as u64 - 2;
        let m = self.p as u64;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        acc as u32
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn from_q(&self, v: &Q) -> Option<u32> {
        let d = self.reduce_big(v.denom());
        if d == 0 {
            return None;
        }
        let n = self.reduce_big(v.numer());
        Some(self.mul(&n, &self.inv(&d)))
    }
    fn characteristic(&self) -> u32 {
        self.p
    }
    fn name(&self) -> String {
        format!("F{}", self.p)
    }
}
