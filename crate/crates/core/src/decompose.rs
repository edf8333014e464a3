//! Splitting `A = diag(0_k, A22)` as a "good" matrix plus a square-zero one.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{FieldElement, FieldSpec, Polynomial};
use crate::canon::frobenius_blocks;
use crate::error::{Error, Result};
use crate::forge::{forge, ForgeProblem};
use crate::linalg::{charpoly, Matrix, SimilarityTransform};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecompositionKind {
    Diagonalizable,
    Invertible,
    Potent,
    Torsion,
}

impl DecompositionKind {
    pub const ALL: [DecompositionKind; 4] = [
        DecompositionKind::Diagonalizable,
        DecompositionKind::Invertible,
        DecompositionKind::Potent,
        DecompositionKind::Torsion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DecompositionKind::Diagonalizable => "Diagonalizable",
            DecompositionKind::Invertible => "Invertible",
            DecompositionKind::Potent => "Potent",
            DecompositionKind::Torsion => "Torsion",
        }
    }

    /// Case-insensitive inverse of [`name`](Self::name).
    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for DecompositionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// Distinct eigenvalues of `good`.
    Eigenvalues(Vec<FieldElement>),
    /// `det(good)`, nonzero.
    Determinant(FieldElement),
    /// `good^n = good` was checked for this `n`.
    PotentPower(usize),
    /// `good^n = I` was checked for this `n`.
    TorsionPower(usize),
}

/// `good + nilpotent = A` with `nilpotent^2 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionCertificate {
    pub kind: DecompositionKind,
    pub good: Matrix,
    pub nilpotent: Matrix,
    pub evidence: Evidence,
    /// `charpoly(good)`.
    pub q: Polynomial,
}

impl DecompositionCertificate {
    /// The square-zero `N = -nilpotent` with `A + N = good`.
    pub fn perturbation(&self) -> Matrix {
        -&self.nilpotent
    }

    /// Re-checks every claim of the certificate against `a`.
    pub fn verify(&self, a: &Matrix) -> Result<()> {
        let fail = Error::InternalVerificationFailed;
        if &self.good + &self.nilpotent != *a {
            return Err(fail("good + nilpotent differs from A"));
        }
        if !self.nilpotent.is_square_zero()? {
            return Err(fail("nilpotent part is not square-zero"));
        }
        if charpoly(&self.good)? != self.q {
            return Err(fail("charpoly(good) differs from q"));
        }
        let n = a.rows();
        let ok = match (&self.kind, &self.evidence) {
            (DecompositionKind::Diagonalizable, Evidence::Eigenvalues(alphas)) => {
                let distinct = alphas
                    .iter()
                    .enumerate()
                    .all(|(i, x)| alphas[..i].iter().all(|y| y != x));
                distinct && alphas.len() == n && Polynomial::from_roots(a.spec(), alphas) == self.q
            }
            (DecompositionKind::Invertible, Evidence::Determinant(d)) => {
                !d.is_zero() && *d == self.good.determinant()?
            }
            (DecompositionKind::Potent, Evidence::PotentPower(m)) => {
                *m == n && self.good.pow(n as u64)? == self.good
            }
            (DecompositionKind::Torsion, Evidence::TorsionPower(m)) => {
                *m == n && self.good.pow(n as u64)?.is_identity()
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(fail("kind-specific evidence does not hold"))
        }
    }
}

fn block_shape(a: &Matrix, k: usize) -> Result<usize> {
    let n = a.require_square()?;
    let border_zero = (0..n).all(|i| (0..n).all(|j| (i >= k && j >= k) || a.get(i, j).is_zero()));
    if n == 0 {
        return Err(Error::BadDimension);
    }
    if k > n || !border_zero {
        return Err(Error::BadBlockShape);
    }
    if k >= n - k {
        return Err(Error::EqualSplitUnsupported { n, k });
    }
    Ok(n)
}

fn certify(
    kind: DecompositionKind,
    a: &Matrix,
    n_mat: Matrix,
    evidence: Evidence,
) -> Result<DecompositionCertificate> {
    let good = a + &n_mat;
    let q = charpoly(&good)?;
    let cert = DecompositionCertificate {
        kind,
        good,
        nilpotent: -&n_mat,
        evidence,
        q,
    };
    cert.verify(a)?;
    Ok(cert)
}

/// Field elements in enumeration order: `1, 2, ..., p-1, 0` for GF(p) and
/// `1, 2, 3, ...` for the rationals.
fn enumerate(spec: FieldSpec) -> impl Iterator<Item = FieldElement> {
    let limit = spec.modulus().map_or(u64::MAX, u64::from);
    (1..limit)
        .chain(spec.modulus().map(|_| 0))
        .map(move |v| spec.from_i64(v as i64))
}

/// Distinct `alpha_1..alpha_n` summing to `trace`. The first `n - 1` run
/// through combinations of the enumeration in lexicographic order, so
/// `alpha_1..alpha_{n-2}` start as the first elements and `alpha_{n-1}`
/// advances until `alpha_n = trace - sum` is new; only if that fails do
/// earlier choices move.
fn choose_eigenvalues(
    spec: FieldSpec,
    n: usize,
    trace: &FieldElement,
) -> Result<Vec<FieldElement>> {
    if spec.modulus().is_some_and(|p| (p as usize) < n) {
        return Err(Error::FieldTooSmall);
    }
    if n == 1 {
        return Ok(vec![trace.clone()]);
    }
    // over the rationals at most n collisions can occur, so 2n + 1 suffice
    let pool: Vec<FieldElement> = enumerate(spec).take(2 * n + 1).collect();
    let r = n - 1;
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        let chosen: Vec<FieldElement> = idx.iter().map(|&i| pool[i].clone()).collect();
        let sum = chosen.iter().fold(spec.zero(), |acc, x| &acc + x);
        let last = trace - &sum;
        if !chosen.contains(&last) {
            let mut alphas = chosen;
            alphas.push(last);
            return Ok(alphas);
        }
        // next combination
        let Some(pos) = (0..r).rev().find(|&i| idx[i] < pool.len() - r + i) else {
            return Err(Error::FieldTooSmall);
        };
        idx[pos] += 1;
        for j in pos + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// `good` has `n` distinct eigenvalues.
pub fn decompose_diagonalizable(a: &Matrix, k: usize) -> Result<DecompositionCertificate> {
    let n = block_shape(a, k)?;
    let alphas = choose_eigenvalues(a.spec(), n, &a.trace()?)?;
    let q = Polynomial::from_roots(a.spec(), &alphas);
    let cert = forge(&ForgeProblem::new(a.clone(), k, q)?)?;
    certify(
        DecompositionKind::Diagonalizable,
        a,
        cert.n,
        Evidence::Eigenvalues(alphas),
    )
}

/// `good` is invertible. `A22` only needs to be invertible: each Frobenius
/// block `C(f_j)` absorbs up to `deg f_j - 1` zero rows, largest blocks
/// first, and is forged to `x^d + f_j[deg-1] x^(d-1) + 1`.
pub fn decompose_invertible(a: &Matrix, k: usize) -> Result<DecompositionCertificate> {
    let n = block_shape(a, k)?;
    let spec = a.spec();
    let m = n - k;
    let a22 = a.block(k, k, m, m)?;
    if a22.determinant()?.is_zero() {
        return Err(Error::NotInvertible);
    }
    if k == 0 {
        let det = a.determinant()?;
        return certify(
            DecompositionKind::Invertible,
            a,
            Matrix::zeros(spec, n, n),
            Evidence::Determinant(det),
        );
    }
    let form = frobenius_blocks(&a22)?;
    let degrees: Vec<usize> = form
        .factors
        .iter()
        .map(|f| f.degree().expect("nonconstant"))
        .collect();
    let capacity: usize = degrees.iter().map(|d| d - 1).sum();
    if k > capacity {
        return Err(Error::GroupingInfeasible { k, capacity });
    }
    // factors ascend in degree, so walking backwards is largest first
    let mut zeros = vec![0usize; degrees.len()];
    let mut left = k;
    for j in (0..degrees.len()).rev() {
        zeros[j] = left.min(degrees[j] - 1);
        left -= zeros[j];
    }

    // Reorder the basis of diag(0_k, C(f_1), ..., C(f_t)) so that each block
    // is preceded by its zero rows; `order[a]` is the original index.
    let mut order = Vec::with_capacity(n);
    let mut pieces = Vec::with_capacity(degrees.len());
    let (mut next_zero, mut offset) = (0, k);
    for (j, f) in form.factors.iter().enumerate() {
        let (kj, dj) = (zeros[j], degrees[j]);
        order.extend(next_zero..next_zero + kj);
        order.extend(offset..offset + dj);
        next_zero += kj;
        offset += dj;
        if kj == 0 {
            pieces.push(Matrix::zeros(spec, dj, dj));
            continue;
        }
        let size = kj + dj;
        let mut target = vec![spec.zero(); size + 1];
        target[0] = spec.one();
        target[size - 1] = f.coeff(dj - 1);
        target[size] = spec.one();
        let target = Polynomial::new(spec, target)?;
        let cert = forge(&ForgeProblem::from_block(kj, &form.blocks[j], target)?)?;
        pieces.push(cert.n);
    }
    let permuted = Matrix::block_diag(spec, &pieces)?;
    let mut n_hat = Matrix::zeros(spec, n, n);
    for (r, &orig_r) in order.iter().enumerate() {
        for (c, &orig_c) in order.iter().enumerate() {
            n_hat.set(orig_r, orig_c, permuted.get(r, c).clone());
        }
    }
    let d: SimilarityTransform = form.transform.embed(k);
    let n_mat = d.unconjugate(&n_hat)?;
    let good = a + &n_mat;
    let det = good.determinant()?;
    certify(
        DecompositionKind::Invertible,
        a,
        n_mat,
        Evidence::Determinant(det),
    )
}

fn zero_trace(a: &Matrix) -> Result<()> {
    if a.trace()?.is_zero() {
        Ok(())
    } else {
        Err(Error::NonzeroTrace)
    }
}

/// `good^n = good`, from `charpoly(good) = x^n - x`. Needs `n >= 3`.
pub fn decompose_potent(a: &Matrix, k: usize) -> Result<DecompositionCertificate> {
    let n = block_shape(a, k)?;
    if n < 3 {
        return Err(Error::DimensionTooSmall);
    }
    zero_trace(a)?;
    let spec = a.spec();
    let q = &Polynomial::monomial(spec.one(), n) - &Polynomial::monomial(spec.one(), 1);
    let cert = forge(&ForgeProblem::new(a.clone(), k, q)?)?;
    certify(
        DecompositionKind::Potent,
        a,
        cert.n,
        Evidence::PotentPower(n),
    )
}

/// `good^n = I`, from `charpoly(good) = x^n - 1`. Needs `n >= 2`.
pub fn decompose_torsion(a: &Matrix, k: usize) -> Result<DecompositionCertificate> {
    let n = block_shape(a, k)?;
    if n < 2 {
        return Err(Error::DimensionTooSmall);
    }
    zero_trace(a)?;
    let spec = a.spec();
    let q = &Polynomial::monomial(spec.one(), n) - &Polynomial::one(spec);
    let cert = forge(&ForgeProblem::new(a.clone(), k, q)?)?;
    certify(
        DecompositionKind::Torsion,
        a,
        cert.n,
        Evidence::TorsionPower(n),
    )
}

/// Dispatches on `kind`.
pub fn decompose(
    kind: DecompositionKind,
    a: &Matrix,
    k: usize,
) -> Result<DecompositionCertificate> {
    match kind {
        DecompositionKind::Diagonalizable => decompose_diagonalizable(a, k),
        DecompositionKind::Invertible => decompose_invertible(a, k),
        DecompositionKind::Potent => decompose_potent(a, k),
        DecompositionKind::Torsion => decompose_torsion(a, k),
    }
}
