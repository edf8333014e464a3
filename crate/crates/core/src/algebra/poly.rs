//! Dense univariate polynomials over a [`FieldSpec`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::field::{FieldElement, FieldSpec};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Coefficients are stored in ascending degree with no trailing zeros, so the
/// zero polynomial is the empty sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    spec: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(spec: FieldSpec, coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.iter().any(|c| c.spec() != spec) {
            return Err(Error::FieldMismatch);
        }
        Ok(Self::from_trusted(spec, coeffs))
    }

    pub(crate) fn from_trusted(spec: FieldSpec, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Polynomial { spec, coeffs }
    }

    pub fn from_i64s(spec: FieldSpec, coeffs: &[i64]) -> Self {
        Self::from_trusted(spec, coeffs.iter().map(|&c| spec.from_i64(c)).collect())
    }

    pub fn zero(spec: FieldSpec) -> Self {
        Polynomial {
            spec,
            coeffs: Vec::new(),
        }
    }

    pub fn one(spec: FieldSpec) -> Self {
        Self::constant(spec.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_trusted(c.spec(), vec![c])
    }

    /// `c * x^d`.
    pub fn monomial(c: FieldElement, d: usize) -> Self {
        let spec = c.spec();
        let mut coeffs = vec![spec.zero(); d];
        coeffs.push(c);
        Self::from_trusted(spec, coeffs)
    }

    /// `x - c`.
    pub fn linear_root(c: &FieldElement) -> Self {
        Self::from_trusted(c.spec(), vec![-c, c.spec().one()])
    }

    /// The monic polynomial `Π (x - r)` over the given roots.
    pub fn from_roots(spec: FieldSpec, roots: &[FieldElement]) -> Self {
        roots
            .iter()
            .fold(Self::one(spec), |acc, r| &acc * &Self::linear_root(r))
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.spec.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(FieldElement::is_one)
    }

    pub fn constant_term(&self) -> FieldElement {
        self.coeff(0)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::from_trusted(self.spec, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn to_monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("leading coefficient is nonzero")),
        }
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self * other)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_field(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree().filter(|&d| d >= dd) else {
            return Ok((Self::zero(self.spec), self.clone()));
        };
        let mut quot = vec![self.spec.zero(); sd - dd + 1];
        for shift in (0..=sd - dd).rev() {
            let c = &rem[shift + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = &rem[shift + i] - &(&c * d);
            }
            quot[shift] = c;
        }
        rem.truncate(dd);
        Ok((
            Self::from_trusted(self.spec, quot),
            Self::from_trusted(self.spec, rem),
        ))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// True when `divisor` divides `self` exactly. Only zero divides zero.
    pub fn is_divisible_by(&self, divisor: &Self) -> Result<bool> {
        if divisor.is_zero() {
            return Ok(self.is_zero());
        }
        Ok(self.rem(divisor)?.is_zero())
    }

    /// Monic gcd; zero only when both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.to_monic())
    }

    /// Monic lcm; zero if either input is zero.
    pub fn lcm(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            self.check_field(other)?;
            return Ok(Self::zero(self.spec));
        }
        let g = self.gcd(other)?;
        let (q, _) = (self * other).div_rem(&g)?;
        Ok(q.to_monic())
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.spec() != self.spec {
            return Err(Error::FieldMismatch);
        }
        Ok(self
            .coeffs
            .iter()
            .rev()
            .fold(self.spec.zero(), |acc, c| &(&acc * x) + c))
    }

    /// `p(M)` by Horner's scheme.
    pub fn evaluate_matrix(&self, m: &Matrix) -> Result<Matrix> {
        if m.spec() != self.spec {
            return Err(Error::FieldMismatch);
        }
        if !m.is_square() {
            return Err(Error::NotSquare);
        }
        let n = m.rows();
        let mut acc = Matrix::zeros(self.spec, n, n);
        for c in self.coeffs.iter().rev() {
            acc = &acc * m;
            for i in 0..n {
                let v = acc.get(i, i) + c;
                acc.set(i, i, v);
            }
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.spec.from_i64(i as i64))
            .collect();
        Self::from_trusted(self.spec, coeffs)
    }

    /// Trace of a monic polynomial: the negated coefficient of `x^(n-1)`.
    pub fn trace(&self) -> Result<FieldElement> {
        let n = match self.degree() {
            None | Some(0) => return Err(Error::ZeroDegree),
            Some(n) => n,
        };
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        Ok(-&self.coeffs[n - 1])
    }

    /// Coefficient vector padded with zeros to `len` entries.
    pub fn padded_coeffs(&self, len: usize) -> Vec<FieldElement> {
        (0..len).map(|i| self.coeff(i)).collect()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.spec), |acc, _| &acc * self)
    }
}

/// Companion matrix of a monic polynomial: ones on the subdiagonal and the
/// negated coefficients `-u_0, ..., -u_{m-1}` down the last column.
pub fn companion(p: &Polynomial) -> Result<Matrix> {
    let m = match p.degree() {
        None | Some(0) => return Err(Error::ZeroDegree),
        Some(m) => m,
    };
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let mut c = Matrix::zeros(p.spec(), m, m);
    for i in 1..m {
        c.set(i, i - 1, p.spec().one());
    }
    for i in 0..m {
        c.set(i, m - 1, -&p.coeffs[i]);
    }
    Ok(c)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "({c})*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.spec, rhs.spec, "field mismatch in polynomial addition");
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        Polynomial::from_trusted(self.spec, coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_trusted(self.spec, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.spec, rhs.spec, "field mismatch in polynomial product");
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.spec);
        }
        let mut out = vec![self.spec.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Polynomial::from_trusted(self.spec, out)
    }
}
