//! The equal split `n = 2k`, where square-zero perturbations no longer reach
//! every target.
//!
//! Up to a basis change fixing `A = diag(0_k, C(p))`, any square-zero `N`
//! with `A + N` invertible has the form `[[X, -X^2], [I, -X]]`, so a search
//! over `X` decides reachability of an invertible target.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::algebra::{companion, pow_mod, FieldElement, FieldSpec, Polynomial};
use crate::error::{Error, Result};
use crate::linalg::{charpoly, Matrix};

/// Default cap on the number of candidates `p^(k^2)` a search may visit.
pub const DEFAULT_BUDGET: u64 = 1 << 20;

/// `[[X, -X^2], [I_k, -X]]`, square-zero for every `X`.
pub fn normal_form_n(x: &Matrix) -> Result<Matrix> {
    let k = x.require_square()?;
    let spec = x.spec();
    let mut n = Matrix::zeros(spec, 2 * k, 2 * k);
    n.set_block(0, 0, x);
    n.set_block(0, k, &-&(x * x));
    n.set_block(k, 0, &Matrix::identity(spec, k));
    n.set_block(k, k, &-x);
    Ok(n)
}

/// `diag(0, 0) + [[0, -1], [1, 0]]`, whose square-zero perturbations never
/// reach `x^4 + 1` over an ordered field.
pub fn quartic_base_matrix(spec: FieldSpec) -> Matrix {
    Matrix::from_i64_rows(
        spec,
        &[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]],
    )
}

/// `charpoly(quartic_base_matrix + normal_form_n(X))` in closed form:
/// `x^4 + (n12 - n21 + 1) x^2 - (n11 + n22) x + n11 n22 - n12 n21`.
pub fn quartic_charpoly(x: &Matrix) -> Result<Polynomial> {
    if x.rows() != 2 || x.cols() != 2 {
        return Err(Error::BadDimension);
    }
    let spec = x.spec();
    let (n11, n12, n21, n22) = (x.get(0, 0), x.get(0, 1), x.get(1, 0), x.get(1, 1));
    let c0 = &(n11 * n22) - &(n12 * n21);
    let c1 = -&(n11 + n22);
    let c2 = &(n12 - n21) + &spec.one();
    Ok(
        Polynomial::new(spec, alloc::vec![c0, c1, c2, spec.zero(), spec.one()])
            .expect("same field"),
    )
}

/// Polynomial in `n11, n12, n21, n22`; keys are exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticMonomials {
    spec: FieldSpec,
    terms: BTreeMap<[u8; 4], FieldElement>,
}

impl QuarticMonomials {
    pub fn constant(c: FieldElement) -> Self {
        let spec = c.spec();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0; 4], c);
        }
        QuarticMonomials { spec, terms }
    }

    /// The variable `n_{ij}`, with `index = 2(i-1) + (j-1)`.
    pub fn variable(spec: FieldSpec, index: usize) -> Self {
        let mut e = [0u8; 4];
        e[index] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, spec.one());
        QuarticMonomials { spec, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms as `(exponents, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&[u8; 4], &FieldElement)> {
        self.terms.iter()
    }

    /// Value at `(n11, n12, n21, n22)`.
    pub fn evaluate(&self, values: [&FieldElement; 4]) -> FieldElement {
        self.terms.iter().fold(self.spec.zero(), |acc, (e, c)| {
            let t = (0..4).fold(c.clone(), |t, i| &t * &values[i].pow(e[i] as u64));
            &acc + &t
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let v = terms.get(e).map_or_else(|| c.clone(), |t| t + c);
            if v.is_zero() {
                terms.remove(e);
            } else {
                terms.insert(*e, v);
            }
        }
        QuarticMonomials {
            spec: self.spec,
            terms,
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, v)| (*e, v * c))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        QuarticMonomials {
            spec: self.spec,
            terms,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-self.spec.one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc = QuarticMonomials {
            spec: self.spec,
            terms: BTreeMap::new(),
        };
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let mut e = [0u8; 4];
                for i in 0..4 {
                    e[i] = e1[i] + e2[i];
                }
                let mut term = BTreeMap::new();
                term.insert(e, c1 * c2);
                acc = acc.add(&QuarticMonomials {
                    spec: self.spec,
                    terms: term,
                });
            }
        }
        acc
    }
}

/// `sum w_i s_i^2 + c = sum m_j e_j` with every `w_i > 0` and `c > 0`: the
/// right side vanishes on any common zero of the `e_j`, the left side cannot
/// in an ordered field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumOfSquaresCertificate {
    pub squares: Vec<(FieldElement, QuarticMonomials)>,
    pub constant: FieldElement,
    pub equations: Vec<QuarticMonomials>,
    pub multipliers: Vec<QuarticMonomials>,
}

impl SumOfSquaresCertificate {
    /// Expands both sides and compares them.
    pub fn verify(&self) -> bool {
        let positive =
            |c: &FieldElement| !c.is_zero() && !c.is_negative() && c.as_rational().is_some();
        if !positive(&self.constant) || !self.squares.iter().all(|(w, _)| positive(w)) {
            return false;
        }
        if self.equations.len() != self.multipliers.len() {
            return false;
        }
        let spec = self.constant.spec();
        let lhs = self.squares.iter().fold(
            QuarticMonomials::constant(self.constant.clone()),
            |acc, (w, s)| acc.add(&s.mul(s).scale(w)),
        );
        let rhs = self
            .equations
            .iter()
            .zip(&self.multipliers)
            .fold(QuarticMonomials::constant(spec.zero()), |acc, (e, m)| {
                acc.add(&e.mul(m))
            });
        lhs == rhs
    }
}

impl fmt::Display for SumOfSquaresCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("n11^2 + (n12 + 1/2)^2 = -3/4")
    }
}

/// Equations on `X` equivalent to `quartic_charpoly(X) = x^4 + 1`.
pub fn quartic_system(spec: FieldSpec) -> Vec<QuarticMonomials> {
    let v = |i| QuarticMonomials::variable(spec, i);
    let one = QuarticMonomials::constant(spec.one());
    alloc::vec![
        v(1).sub(&v(2)).add(&one),
        v(0).add(&v(3)),
        v(0).mul(&v(3)).sub(&v(1).mul(&v(2))).sub(&one),
    ]
}

/// Eliminating `n22 = -n11` and `n21 = n12 + 1` leaves
/// `n11^2 + n12^2 + n12 + 1 = 0`, i.e. `n11^2 + (n12 + 1/2)^2 = -3/4`.
pub fn quartic_certificate() -> SumOfSquaresCertificate {
    let spec = FieldSpec::Rationals;
    let v = |i| QuarticMonomials::variable(spec, i);
    let half = FieldElement::parse(spec, "1/2").expect("literal");
    let shifted = v(1).add(&QuarticMonomials::constant(half));
    SumOfSquaresCertificate {
        squares: alloc::vec![(spec.one(), v(0)), (spec.one(), shifted)],
        constant: FieldElement::parse(spec, "3/4").expect("literal"),
        equations: quartic_system(spec),
        multipliers: alloc::vec![v(1), v(0), QuarticMonomials::constant(-spec.one())],
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuarticOutcome {
    /// Over the rationals, with a verified certificate.
    NoSolution(Option<SumOfSquaresCertificate>),
    /// The first `X` in canonical order.
    Witness(Matrix),
}

/// Whether some `N = normal_form_n(X)` gives `charpoly(quartic_base_matrix + N) =
/// x^4 + 1`.
pub fn check_quartic_counterexample(spec: FieldSpec) -> QuarticOutcome {
    let Some(p) = spec.modulus() else {
        let cert = quartic_certificate();
        debug_assert!(cert.verify());
        return QuarticOutcome::NoSolution(Some(cert));
    };
    match quartic_min_solution(p) {
        Some((n11, n12)) => {
            let (p64, n11, n12) = (p as u64, n11 as u64, n12 as u64);
            let n21 = (n12 + 1) % p64;
            let n22 = (p64 - n11) % p64;
            let rows = [[n11, n12], [n21, n22]];
            let x = Matrix::from_fn(spec, 2, 2, |i, j| spec.from_i64(rows[i][j] as i64));
            QuarticOutcome::Witness(x)
        }
        None => QuarticOutcome::NoSolution(None),
    }
}

/// Smallest `(n11, n12)` in lexicographic order with
/// `n11^2 + n12^2 + n12 + 1 = 0` mod `p`. The remaining entries are
/// determined, so this is also the canonical-order minimum over `X`.
fn quartic_min_solution(p: u32) -> Option<(u32, u32)> {
    let m = p as u64;
    if p == 2 {
        return (0..2u64)
            .flat_map(|a| (0..2u64).map(move |b| (a, b)))
            .find(|&(a, b)| (a * a + b * b + b + 1) % 2 == 0)
            .map(|(a, b)| (a as u32, b as u32));
    }
    let inv2 = m.div_ceil(2);
    for n11 in 0..m {
        // n12 = (-1 +- sqrt(-3 - 4 n11^2)) / 2
        let disc = (2 * m - 3 % m - 4 * (n11 * n11 % m) % m) % m;
        if let Some(s) = sqrt_mod(disc, m) {
            let r1 = (m - 1 + s) % m * inv2 % m;
            let r2 = (2 * m - 1 - s) % m * inv2 % m;
            return Some((n11 as u32, r1.min(r2) as u32));
        }
    }
    None
}

/// A square root of `a` modulo an odd prime `p`, by Tonelli-Shanks.
fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p)
        .find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)
        .expect("non-residue exists");
    let mut c = pow_mod(z, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    let mut t = pow_mod(a, q, p);
    let mut m = s;
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = tt * tt % p;
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        r = r * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    Some(r)
}

/// A search for `X` with `charpoly(A + normal_form_n(X)) = q`, where
/// `A = diag(0_k, C(p22))` over GF(p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualSplitProblem {
    k: usize,
    a: Matrix,
    q: Polynomial,
}

impl EqualSplitProblem {
    /// Validates `A`'s shape and the target.
    pub fn new(a: &Matrix, q: &Polynomial) -> Result<Self> {
        let spec = a.spec();
        if !spec.is_finite() {
            return Err(Error::UnsupportedInfiniteField);
        }
        if q.spec() != spec {
            return Err(Error::FieldMismatch);
        }
        let n = a.require_square()?;
        if n == 0 || n % 2 != 0 {
            return Err(Error::BadShape);
        }
        let k = n / 2;
        let border_zero =
            (0..n).all(|i| (0..n).all(|j| (i >= k && j >= k) || a.get(i, j).is_zero()));
        let a22 = a.block(k, k, k, k)?;
        let p22 = charpoly(&a22)?;
        if !border_zero || companion(&p22)? != a22 || p22.constant_term().is_zero() {
            return Err(Error::BadShape);
        }
        if !q.is_monic() {
            return Err(Error::NotMonic);
        }
        if q.degree() != Some(n) {
            return Err(Error::DegreeMismatch);
        }
        if q.constant_term().is_zero() {
            return Err(Error::NonInvertibleTarget);
        }
        if q.trace()? != a.trace()? {
            return Err(Error::TraceMismatch);
        }
        Ok(EqualSplitProblem {
            k,
            a: a.clone(),
            q: q.clone(),
        })
    }

    /// `A = diag(0_k, C(p22))` with `k = deg p22`.
    pub fn from_block(p22: &Polynomial, q: &Polynomial) -> Result<Self> {
        if !p22.spec().is_finite() {
            return Err(Error::UnsupportedInfiniteField);
        }
        let c = companion(p22)?;
        let k = c.rows();
        let mut a = Matrix::zeros(p22.spec(), 2 * k, 2 * k);
        a.set_block(k, k, &c);
        Self::new(&a, q)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }

    pub fn target(&self) -> &Polynomial {
        &self.q
    }

    /// `p^(k^2)`, saturating.
    pub fn candidate_count(&self) -> u128 {
        let p = self.a.spec().modulus().expect("finite") as u128;
        (0..self.k * self.k)
            .try_fold(1u128, |acc, _| acc.checked_mul(p))
            .unwrap_or(u128::MAX)
    }

    pub fn check_budget(&self, budget: u64) -> Result<u64> {
        let candidates = self.candidate_count();
        if candidates > budget as u128 {
            return Err(Error::BudgetExceeded { candidates, budget });
        }
        Ok(candidates as u64)
    }

    /// The `index`-th `X` in canonical order: entries are base-`p` digits,
    /// row-major, first entry most significant.
    pub fn candidate(&self, mut index: u64) -> Matrix {
        let spec = self.a.spec();
        let p = spec.modulus().expect("finite") as u64;
        let k = self.k;
        let mut digits = alloc::vec![0u64; k * k];
        for d in digits.iter_mut().rev() {
            *d = index % p;
            index /= p;
        }
        Matrix::from_fn(spec, k, k, |i, j| spec.from_i64(digits[i * k + j] as i64))
    }

    pub fn is_witness(&self, x: &Matrix) -> Result<bool> {
        let n = normal_form_n(x)?;
        Ok(charpoly(&(&self.a + &n))? == self.q)
    }

    /// First witness index in `range`, in order.
    pub fn search_range(&self, range: Range<u64>) -> Result<Option<u64>> {
        for idx in range {
            if self.is_witness(&self.candidate(idx))? {
                return Ok(Some(idx));
            }
        }
        Ok(None)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqualSplitOutcome {
    Witness {
        index: u64,
        x: Matrix,
    },
    /// No normal-form `N` works, so no square-zero `N` with `A + N`
    /// invertible does.
    Exhausted {
        candidates: u64,
    },
}

/// Sequential search over every candidate.
pub fn search_equal_split(problem: &EqualSplitProblem, budget: u64) -> Result<EqualSplitOutcome> {
    let total = problem.check_budget(budget)?;
    Ok(match problem.search_range(0..total)? {
        Some(index) => EqualSplitOutcome::Witness {
            index,
            x: problem.candidate(index),
        },
        None => EqualSplitOutcome::Exhausted { candidates: total },
    })
}
