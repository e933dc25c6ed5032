//! Exact scalar fields: the rationals and prime fields `F_p`.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    /// Parses `q` or `fp:<p>`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "q" || s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(rest) = s.strip_prefix("fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad prime in field spec {s:?}")))?;
            if !is_prime(p) {
                return Err(Error::Parse(format!("{p} is not prime")));
            }
            return Ok(FieldSpec::Prime(p));
        }
        Err(Error::Parse(format!("unknown field spec {s:?}")))
    }

    pub fn render(&self) -> String {
        match self {
            FieldSpec::Rationals => "q".to_string(),
            FieldSpec::Prime(p) => format!("fp:{p}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field. Elements are plain values; the field value carries whatever
/// context (the modulus) the arithmetic needs.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a + b*c`, the inner step of every elimination.
    fn mul_add(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.add(a, &self.mul(b, c))
    }

    /// Textual scalar encoding used in documents: `"p/q"` or integers.
    fn render(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;
}

/// The field of rational numbers with arbitrary-precision fractions in lowest terms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn render(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad rational scalar {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(BigRational::from_integer(n))
            }
        }
    }
}

/// The prime field `F_p`, elements stored as canonical representatives `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= (1 << 31) {
            return Err(Error::Parse(format!("unsupported modulus {p}")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let e = num_bigint::BigInt::from(*a).extended_gcd(&num_bigint::BigInt::from(self.p));
        let x = e.x.mod_floor(&num_bigint::BigInt::from(self.p));
        x.to_u64()
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn mul_add(&self, a: &u64, b: &u64, c: &u64) -> u64 {
        (a + b * c) % self.p
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let s = s.trim();
        if let Ok(v) = s.parse::<i64>() {
            return Ok(self.from_i64(v));
        }
        // A fraction is accepted and reduced mod p.
        let q = Rationals.parse(s)?;
        let p = BigInt::from(self.p);
        let n = q.numer().mod_floor(&p).to_u64().unwrap_or(0);
        let d = q.denom().mod_floor(&p).to_u64().unwrap_or(0);
        let dinv = self
            .inv(&d)
            .ok_or_else(|| Error::Parse(format!("denominator of {s:?} vanishes mod {}", self.p)))?;
        Ok(self.mul(&n, &dinv))
    }
}

/// Converts a small signed integer to a rational; used by test oracles.
pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_inverse() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7u64 {
            let i = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &i), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn parse_scalars() {
        assert_eq!(Rationals.parse("-3/6").unwrap(), q(-1, 2));
        assert_eq!(Rationals.render(&q(4, 2)), "2");
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.parse("-1").unwrap(), 4);
        assert_eq!(f.parse("1/2").unwrap(), 3);
        assert!(Rationals.parse("1/0").is_err());
    }

    #[test]
    fn field_spec_parse() {
        assert_eq!(FieldSpec::parse("q").unwrap(), FieldSpec::Rationals);
        assert_eq!(FieldSpec::parse("fp:11").unwrap(), FieldSpec::Prime(11));
        assert!(FieldSpec::parse("fp:12").is_err());
    }
}
