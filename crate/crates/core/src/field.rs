//! Exact scalar arithmetic over the rationals and prime fields.
//!
//! A [`FieldCtx`] is a small copyable descriptor; a [`Scalar`] carries enough
//! of its context (the modulus, or nothing for `Q`) that mixing elements of
//! different fields is detected at runtime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("a prime field needs a modulus")]
    MissingModulus,
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars belong to different fields ({0} vs {1})")]
    ContextMismatch(String, String),
    #[error("cannot parse `{0}` as a field (expected `q` or `fp:<prime>`)")]
    BadFieldSpec(String),
    #[error("cannot parse `{0}` as a scalar")]
    BadScalar(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FieldKind {
    Rationals,
    PrimeField,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    kind: FieldKind,
    characteristic: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime_above(n: u64) -> u64 {
    let mut p = n + 1;
    while !is_prime(p) {
        p += 1;
    }
    p
}

impl FieldCtx {
    pub fn create(kind: FieldKind, modulus: Option<u64>) -> Result<Self, FieldError> {
        match kind {
            FieldKind::Rationals => Ok(Self::rationals()),
            FieldKind::PrimeField => Self::prime(modulus.ok_or(FieldError::MissingModulus)?),
        }
    }

    pub fn rationals() -> Self {
        FieldCtx { kind: FieldKind::Rationals, characteristic: 0 }
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrimeModulus(p));
        }
        Ok(FieldCtx { kind: FieldKind::PrimeField, characteristic: p })
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_rational(&self) -> bool {
        self.kind == FieldKind::Rationals
    }

    /// True when the characteristic is zero or exceeds `n`.
    pub fn admits(&self, n: usize) -> bool {
        self.characteristic == 0 || self.characteristic > n as u64
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.kind {
            FieldKind::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldKind::PrimeField => {
                let p = self.characteristic;
                Scalar::Residue { value: v.rem_euclid(p as i64) as u64, modulus: p }
            }
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self.kind {
            FieldKind::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldKind::PrimeField => {
                let p = BigInt::from(self.characteristic);
                let r = v.mod_floor(&p);
                let value = r.to_u64_digits().1.first().copied().unwrap_or(0);
                Scalar::Residue { value, modulus: self.characteristic }
            }
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar, FieldError> {
        self.from_i64(num).checked_div(&self.from_i64(den))
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self.kind, s) {
            (FieldKind::Rationals, Scalar::Rational(_)) => true,
            (FieldKind::PrimeField, Scalar::Residue { modulus, .. }) => *modulus == self.characteristic,
            _ => false,
        }
    }

    /// Parses `"a/b"`, `"a"` (rationals) or a decimal residue (prime fields).
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, FieldError> {
        let bad = || FieldError::BadScalar(s.to_string());
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((a, b)) => {
                (a.trim().parse::<BigInt>().map_err(|_| bad())?, b.trim().parse::<BigInt>().map_err(|_| bad())?)
            }
            None => (t.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        self.from_bigint(&num).checked_div(&self.from_bigint(&den))
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Rationals => write!(f, "q"),
            FieldKind::PrimeField => write!(f, "fp:{}", self.characteristic),
        }
    }
}

impl FromStr for FieldCtx {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" {
            return Ok(Self::rationals());
        }
        match t.strip_prefix("fp:") {
            Some(p) => {
                let p: u64 = p.parse().map_err(|_| FieldError::BadFieldSpec(s.to_string()))?;
                Self::prime(p)
            }
            None => Err(FieldError::BadFieldSpec(s.to_string())),
        }
    }
}

/// An element of `Q` (always in lowest terms) or of `F_p` (always in `[0, p)`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Inverse of `a` modulo `p` by the extended Euclidean algorithm.
pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

impl Scalar {
    pub fn ctx(&self) -> FieldCtx {
        match self {
            Scalar::Rational(_) => FieldCtx::rationals(),
            Scalar::Residue { modulus, .. } => FieldCtx { kind: FieldKind::PrimeField, characteristic: *modulus },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    fn mismatch(&self, other: &Scalar) -> FieldError {
        FieldError::ContextMismatch(self.ctx().to_string(), other.ctx().to_string())
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) if p == q => {
                Ok(Scalar::Residue { value: ((*a as u128 + *b as u128) % *p as u128) as u64, modulus: *p })
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) if p == q => {
                Ok(Scalar::Residue { value: mul_mod(*a, *b, *p), modulus: *p })
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        if self.ctx() != other.ctx() {
            return Err(self.mismatch(other));
        }
        self.checked_mul(&other.inv()?)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => {
                Scalar::Residue { value: if *value == 0 { 0 } else { modulus - value }, modulus: *modulus }
            }
        }
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match self {
            Scalar::Rational(a) => Ok(Scalar::Rational(a.recip())),
            Scalar::Residue { value, modulus } => Ok(Scalar::Residue {
                value: inv_mod(*value, *modulus).ok_or(FieldError::DivisionByZero)?,
                modulus: *modulus,
            }),
        }
    }

    /// Numerator and denominator as big integers (residues have denominator 1).
    pub fn to_fraction(&self) -> (BigInt, BigInt) {
        match self {
            Scalar::Rational(q) => (q.numer().clone(), q.denom().clone()),
            Scalar::Residue { value, .. } => (BigInt::from(*value), BigInt::one()),
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

// Operator sugar for code paths where both operands come from one context.
// Mixing contexts there is a programming error, hence the panics.

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalar field mismatch")
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.checked_sub(rhs).expect("scalar field mismatch")
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalar field mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

/// Sign of a rational as -1, 0 or 1; residues report 0 or 1.
pub fn signum(s: &Scalar) -> i32 {
    match s {
        Scalar::Rational(q) if q.is_negative() => -1,
        _ if s.is_zero() => 0,
        _ => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn create_contexts() {
        assert_eq!(FieldCtx::create(FieldKind::Rationals, None).unwrap().characteristic(), 0);
        assert_eq!(FieldCtx::create(FieldKind::PrimeField, Some(7)).unwrap().characteristic(), 7);
        assert_eq!(FieldCtx::create(FieldKind::PrimeField, Some(6)), Err(FieldError::NonPrimeModulus(6)));
        assert_eq!(FieldCtx::create(FieldKind::PrimeField, None), Err(FieldError::MissingModulus));
    }

    #[test]
    fn rational_sum() {
        let q = FieldCtx::rationals();
        let s = &q.from_ratio(1, 2).unwrap() + &q.from_ratio(1, 3).unwrap();
        assert_eq!(s, q.from_ratio(5, 6).unwrap());
        assert_eq!(s.to_string(), "5/6");
    }

    #[test]
    fn inverse_mod_seven_matches_brute_force() {
        let f = FieldCtx::prime(7).unwrap();
        let brute = (0..7).find(|x| (3 * x) % 7 == 1).unwrap();
        assert_eq!(brute, 5);
        assert_eq!(f.from_i64(3).inv().unwrap(), f.from_i64(brute));
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(FieldCtx::rationals().zero().inv(), Err(FieldError::DivisionByZero));
        assert_eq!(FieldCtx::prime(5).unwrap().zero().inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn mixed_contexts_are_rejected() {
        let a = FieldCtx::rationals().one();
        let b = FieldCtx::prime(5).unwrap().one();
        assert!(matches!(a.checked_add(&b), Err(FieldError::ContextMismatch(..))));
        let c = FieldCtx::prime(7).unwrap().one();
        assert!(matches!(b.checked_mul(&c), Err(FieldError::ContextMismatch(..))));
    }

    #[test]
    fn field_spec_strings() {
        assert_eq!("q".parse::<FieldCtx>().unwrap(), FieldCtx::rationals());
        assert_eq!("fp:7".parse::<FieldCtx>().unwrap().characteristic(), 7);
        assert!(matches!("fp:9".parse::<FieldCtx>(), Err(FieldError::NonPrimeModulus(9))));
        assert!(matches!("r".parse::<FieldCtx>(), Err(FieldError::BadFieldSpec(_))));
        assert_eq!(FieldCtx::prime(11).unwrap().to_string(), "fp:11");
    }

    #[test]
    fn scalar_strings() {
        let q = FieldCtx::rationals();
        assert_eq!(q.parse_scalar("-4/6").unwrap().to_string(), "-2/3");
        assert_eq!(q.parse_scalar("3/1").unwrap().to_string(), "3");
        let f = FieldCtx::prime(7).unwrap();
        assert_eq!(f.parse_scalar("-1").unwrap().to_string(), "6");
        assert_eq!(f.parse_scalar("1/3").unwrap().to_string(), "5");
        assert!(q.parse_scalar("1/0").is_err());
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(next_prime_above(5), 7);
        assert_eq!(next_prime_above(7), 11);
    }
}
