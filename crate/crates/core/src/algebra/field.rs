//! Exact scalars: the rationals and prime fields GF(p), p < 2^31.

use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest modulus accepted for a prime field (exclusive).
pub const MAX_MODULUS: u64 = 1 << 31;

/// A prime below 2^31, checked at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The scalar domain every element, polynomial and matrix is tagged with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(Prime),
}

impl FieldSpec {
    pub fn prime_field(p: u64) -> Result<Self> {
        Prime::new(p).map(FieldSpec::PrimeField)
    }

    /// `None` for the rationals.
    pub fn modulus(self) -> Option<u32> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some(p.get()),
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, FieldSpec::PrimeField(_))
    }

    pub fn zero(self) -> FieldElement {
        FieldElement::from_i64(self, 0)
    }

    pub fn one(self) -> FieldElement {
        FieldElement::from_i64(self, 1)
    }

    pub fn from_i64(self, v: i64) -> FieldElement {
        FieldElement::from_i64(self, v)
    }

    /// Parses a literal in the canonical textual form of this field.
    pub fn parse(self, s: &str) -> Result<FieldElement> {
        FieldElement::parse(self, s)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("Q"),
            FieldSpec::PrimeField(p) => write!(f, "GF({})", p.get()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    Residue { value: u32, modulus: Prime },
}

/// An exact field element. Rationals are kept reduced with positive
/// denominator, residues in `[0, p)`, so structural equality is field equality.
///
/// The arithmetic operators panic when the operands come from different
/// fields or on division by zero; the `checked_*` methods report those cases
/// as errors instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement(Repr);

impl FieldElement {
    pub fn from_i64(spec: FieldSpec, v: i64) -> Self {
        match spec {
            FieldSpec::Rationals => {
                FieldElement(Repr::Rational(BigRational::from_integer(v.into())))
            }
            FieldSpec::PrimeField(p) => {
                let value = v.rem_euclid(p.get() as i64) as u32;
                FieldElement(Repr::Residue { value, modulus: p })
            }
        }
    }

    pub fn from_bigint(spec: FieldSpec, v: &BigInt) -> Self {
        match spec {
            FieldSpec::Rationals => {
                FieldElement(Repr::Rational(BigRational::from_integer(v.clone())))
            }
            FieldSpec::PrimeField(p) => {
                let m = BigInt::from(p.get());
                let r = ((v % &m) + &m) % &m;
                let value = u32::try_from(&r).expect("residue fits in u32");
                FieldElement(Repr::Residue { value, modulus: p })
            }
        }
    }

    /// Builds a rational element; fails over GF(p).
    pub fn from_rational(spec: FieldSpec, r: BigRational) -> Result<Self> {
        match spec {
            FieldSpec::Rationals => Ok(FieldElement(Repr::Rational(r))),
            FieldSpec::PrimeField(_) => {
                let num = Self::from_bigint(spec, r.numer());
                let den = Self::from_bigint(spec, r.denom());
                num.checked_div(&den)
            }
        }
    }

    pub fn spec(&self) -> FieldSpec {
        match &self.0 {
            Repr::Rational(_) => FieldSpec::Rationals,
            Repr::Residue { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_zero(),
            Repr::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_one(),
            Repr::Residue { value, .. } => *value == 1,
        }
    }

    /// The rational value, if this is an element of Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(r) => Some(r),
            Repr::Residue { .. } => None,
        }
    }

    /// The canonical residue, if this is an element of GF(p).
    pub fn residue(&self) -> Option<u32> {
        match &self.0 {
            Repr::Rational(_) => None,
            Repr::Residue { value, .. } => Some(*value),
        }
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        match (&self.0, &other.0) {
            (Repr::Rational(_), Repr::Rational(_)) => Ok(()),
            (Repr::Residue { modulus: p, .. }, Repr::Residue { modulus: q, .. }) if p == q => {
                Ok(())
            }
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.add_unchecked(&other.neg_ref()))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Rational(r) => FieldElement(Repr::Rational(r.recip())),
            Repr::Residue { value, modulus } => {
                let p = modulus.get() as u64;
                FieldElement(Repr::Residue {
                    value: pow_mod(*value as u64, p - 2, p) as u32,
                    modulus: *modulus,
                })
            }
        })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.spec().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn neg_ref(&self) -> Self {
        match &self.0 {
            Repr::Rational(r) => FieldElement(Repr::Rational(-r)),
            Repr::Residue { value, modulus } => {
                let p = modulus.get();
                let value = if *value == 0 { 0 } else { p - value };
                FieldElement(Repr::Residue {
                    value,
                    modulus: *modulus,
                })
            }
        }
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => FieldElement(Repr::Rational(a + b)),
            (Repr::Residue { value: a, modulus }, Repr::Residue { value: b, .. }) => {
                let p = modulus.get() as u64;
                let s = (*a as u64 + *b as u64) % p;
                FieldElement(Repr::Residue {
                    value: s as u32,
                    modulus: *modulus,
                })
            }
            _ => panic!("field mismatch in addition"),
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => FieldElement(Repr::Rational(a * b)),
            (Repr::Residue { value: a, modulus }, Repr::Residue { value: b, .. }) => {
                let p = modulus.get() as u64;
                let s = (*a as u64 * *b as u64) % p;
                FieldElement(Repr::Residue {
                    value: s as u32,
                    modulus: *modulus,
                })
            }
            _ => panic!("field mismatch in multiplication"),
        }
    }

    /// Parses `"a"` or `"a/b"` over Q, and a (possibly negative) integer over
    /// GF(p), which is reduced into `[0, p)`.
    pub fn parse(spec: FieldSpec, s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(s.to_string());
        let parse_int = |t: &str| -> Result<BigInt> {
            let digits = t.strip_prefix('-').unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        match spec {
            FieldSpec::Rationals => {
                let r = match s.split_once('/') {
                    None => BigRational::from_integer(parse_int(s)?),
                    Some((n, d)) => {
                        let num = parse_int(n)?;
                        if d.starts_with('-') {
                            return Err(bad());
                        }
                        let den = parse_int(d)?;
                        if den.is_zero() {
                            return Err(Error::Parse(String::from("zero denominator")));
                        }
                        BigRational::new(num, den)
                    }
                };
                Ok(FieldElement(Repr::Rational(r)))
            }
            FieldSpec::PrimeField(_) => Ok(Self::from_bigint(spec, &parse_int(s)?)),
        }
    }

    /// Sign of a rational element; residues are never negative.
    pub fn is_negative(&self) -> bool {
        matches!(&self.0, Repr::Rational(r) if r.is_negative())
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Repr::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Repr::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                $body(self, rhs)
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                $body(&self, &rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                $body(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &FieldElement, b: &FieldElement| a
    .add_unchecked(b));
forward_binop!(Sub, sub, |a: &FieldElement, b: &FieldElement| a
    .add_unchecked(&b.neg_ref()));
forward_binop!(Mul, mul, |a: &FieldElement, b: &FieldElement| a
    .mul_unchecked(b));
forward_binop!(Div, div, |a: &FieldElement, b: &FieldElement| a
    .mul_unchecked(&b.inv().expect("division by zero")));

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use proptest::prelude::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime_field(p).unwrap()
    }

    #[test]
    fn gf7_product() {
        let f = gf(7);
        assert!((f.from_i64(3) * f.from_i64(5)).is_one());
    }

    #[test]
    fn rational_sum_of_quarters() {
        let q = FieldSpec::Rationals;
        let s = q.parse("3/4").unwrap() + q.parse("1/4").unwrap();
        assert!(s.is_one());
    }

    #[test]
    fn gf5_inverse_of_two() {
        let f = gf(5);
        assert_eq!(f.from_i64(2).inv().unwrap(), f.from_i64(3));
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(
            FieldSpec::Rationals.zero().inv(),
            Err(Error::DivisionByZero)
        );
        assert_eq!(gf(3).zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(
            gf(3).one().checked_div(&gf(3).zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let a = gf(5).one();
        let b = gf(7).one();
        assert_eq!(a.checked_add(&b), Err(Error::FieldMismatch));
        assert_eq!(
            a.checked_mul(&FieldSpec::Rationals.one()),
            Err(Error::FieldMismatch)
        );
    }

    #[test]
    fn modulus_must_be_a_small_prime() {
        assert!(FieldSpec::prime_field(2).is_ok());
        assert!(FieldSpec::prime_field(2_147_483_647).is_ok());
        assert_eq!(FieldSpec::prime_field(1), Err(Error::InvalidModulus(1)));
        assert_eq!(FieldSpec::prime_field(91), Err(Error::InvalidModulus(91)));
        assert!(FieldSpec::prime_field(1 << 31).is_err());
    }

    #[test]
    fn literals_are_canonical() {
        let q = FieldSpec::Rationals;
        assert_eq!(format!("{}", q.parse("6/8").unwrap()), "3/4");
        assert_eq!(format!("{}", q.parse("-4/2").unwrap()), "-2");
        assert_eq!(format!("{}", q.parse(" 7 ").unwrap()), "7");
        assert_eq!(format!("{}", gf(5).parse("-1").unwrap()), "4");
        assert_eq!(format!("{}", gf(5).parse("12").unwrap()), "2");
        for bad in ["", "1/0", "a", "1/-2", "1.5", "--3", "3/"] {
            assert!(matches!(q.parse(bad), Err(Error::Parse(_))), "{bad}");
        }
        assert!(gf(5).parse("1/2").is_err());
    }

    #[test]
    fn rational_into_prime_field() {
        let f = gf(7);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(FieldElement::from_rational(f, half).unwrap(), f.from_i64(4));
        let bad = BigRational::new(1.into(), 7.into());
        assert_eq!(
            FieldElement::from_rational(f, bad),
            Err(Error::DivisionByZero)
        );
    }

    fn spec_strategy() -> impl Strategy<Value = FieldSpec> {
        prop_oneof![
            Just(FieldSpec::Rationals),
            Just(gf(2)),
            Just(gf(3)),
            Just(gf(101)),
            Just(gf(2_147_483_629)),
        ]
    }

    fn element(spec: FieldSpec) -> impl Strategy<Value = FieldElement> {
        (any::<i32>(), 1i32..50).prop_map(move |(n, d)| match spec {
            FieldSpec::Rationals => {
                FieldElement::from_rational(spec, BigRational::new(n.into(), d.into())).unwrap()
            }
            _ => spec.from_i64(n as i64),
        })
    }

    fn triple() -> impl Strategy<Value = (FieldElement, FieldElement, FieldElement)> {
        spec_strategy().prop_flat_map(|s| (element(s), element(s), element(s)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn field_axioms((a, b, c) in triple()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn render_parse_round_trip((a, _b, _c) in triple()) {
            let text = format!("{a}");
            prop_assert_eq!(FieldElement::parse(a.spec(), &text).unwrap(), a);
        }
    }
}
