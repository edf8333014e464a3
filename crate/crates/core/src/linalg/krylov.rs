//! Krylov sequences: minimal polynomials, cyclic vectors and the similarity
//! onto a companion matrix.

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::{charpoly, Matrix};
use crate::algebra::{companion, FieldElement, FieldSpec, Polynomial};
use crate::error::{Error, Result};

/// Seed of the pseudorandom stage of the cyclic-vector search.
pub const CYCLIC_SEARCH_SEED: u64 = 0x5EED;

/// An invertible change of basis, stored with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilarityTransform {
    t: Matrix,
    t_inv: Matrix,
}

impl SimilarityTransform {
    /// Inverts `t`; fails with `SingularMatrix`.
    pub fn new(t: Matrix) -> Result<Self> {
        let t_inv = t.inverse()?;
        Ok(SimilarityTransform { t, t_inv })
    }

    /// Accepts a precomputed inverse after checking `t * t_inv = I`.
    pub fn from_pair(t: Matrix, t_inv: Matrix) -> Result<Self> {
        if !t.checked_mul(&t_inv)?.is_identity() {
            return Err(Error::SingularMatrix);
        }
        Ok(SimilarityTransform { t, t_inv })
    }

    pub fn identity(spec: FieldSpec, n: usize) -> Self {
        let i = Matrix::identity(spec, n);
        SimilarityTransform {
            t: i.clone(),
            t_inv: i,
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.t
    }

    pub fn inverse(&self) -> &Matrix {
        &self.t_inv
    }

    pub fn is_identity(&self) -> bool {
        self.t.is_identity()
    }

    /// `T^-1 A T`.
    pub fn conjugate(&self, a: &Matrix) -> Result<Matrix> {
        self.t_inv.checked_mul(a)?.checked_mul(&self.t)
    }

    /// `T A T^-1`, undoing [`conjugate`](Self::conjugate).
    pub fn unconjugate(&self, a: &Matrix) -> Result<Matrix> {
        self.t.checked_mul(a)?.checked_mul(&self.t_inv)
    }

    /// `diag(I_k, T)`.
    pub fn embed(&self, k: usize) -> Self {
        let spec = self.t.spec();
        let i = Matrix::identity(spec, k);
        SimilarityTransform {
            t: Matrix::block_diag(spec, &[i.clone(), self.t.clone()]).expect("same field"),
            t_inv: Matrix::block_diag(spec, &[i, self.t_inv.clone()]).expect("same field"),
        }
    }
}

/// Echelon basis of a growing Krylov space, remembering for each reduced
/// vector the polynomial that produced it.
struct KrylovEchelon {
    rows: Vec<(usize, Vec<FieldElement>, Polynomial)>,
}

impl KrylovEchelon {
    /// Reduces `w` (= `combo(A) v`) against the basis. Returns the reduced
    /// vector and polynomial.
    fn reduce(
        &self,
        mut w: Vec<FieldElement>,
        mut combo: Polynomial,
    ) -> (Vec<FieldElement>, Polynomial) {
        for (pivot, vec, poly) in &self.rows {
            let f = w[*pivot].clone();
            if f.is_zero() {
                continue;
            }
            for (wi, vi) in w.iter_mut().zip(vec) {
                if !vi.is_zero() {
                    *wi = &*wi - &(&f * vi);
                }
            }
            combo = &combo - &poly.scale(&f);
        }
        (w, combo)
    }

    fn push(&mut self, w: Vec<FieldElement>, combo: Polynomial) {
        let pivot = w.iter().position(|e| !e.is_zero()).expect("nonzero vector");
        let inv = w[pivot].inv().expect("pivot is nonzero");
        let w = w.iter().map(|e| e * &inv).collect();
        self.rows.push((pivot, w, combo.scale(&inv)));
    }
}

/// Minimal polynomial of `v` under `a`: the monic `m` of least degree with
/// `m(a) v = 0`. Also returns the Krylov vectors `v, Av, ..., A^(d-1) v`.
fn krylov(a: &Matrix, v: &[FieldElement]) -> (Polynomial, Vec<Vec<FieldElement>>) {
    let spec = a.spec();
    let mut ech = KrylovEchelon { rows: Vec::new() };
    let mut powers: Vec<Vec<FieldElement>> = Vec::new();
    let mut raw = v.to_vec();
    loop {
        let d = powers.len();
        let (w, combo) = ech.reduce(raw.clone(), Polynomial::monomial(spec.one(), d));
        if w.iter().all(FieldElement::is_zero) {
            return (combo, powers);
        }
        ech.push(w, combo);
        let next = a.mul_vec(&raw);
        powers.push(raw);
        raw = next;
    }
}

/// Minimal polynomial of the vector `v` with respect to `a`.
pub fn local_minpoly(a: &Matrix, v: &[FieldElement]) -> Result<Polynomial> {
    let n = a.require_square()?;
    if v.len() != n {
        return Err(Error::DimensionMismatch);
    }
    if v.iter().any(|e| e.spec() != a.spec()) {
        return Err(Error::FieldMismatch);
    }
    Ok(krylov(a, v).0)
}

fn unit_vector(spec: FieldSpec, n: usize, i: usize) -> Vec<FieldElement> {
    let mut e = vec![spec.zero(); n];
    e[i] = spec.one();
    e
}

/// Minimal polynomial of `a`, as the lcm of the local minimal polynomials of
/// the standard basis vectors.
pub fn minpoly(a: &Matrix) -> Result<Polynomial> {
    let n = a.require_square()?;
    let spec = a.spec();
    let mut m = Polynomial::one(spec);
    for i in 0..n {
        let local = krylov(a, &unit_vector(spec, n, i)).0;
        if !m.is_divisible_by(&local)? {
            m = m.lcm(&local)?;
        }
        if m.degree() == Some(n) {
            break;
        }
    }
    Ok(m)
}

/// True iff the minimal polynomial has degree `n`.
pub fn is_nonderogatory(a: &Matrix) -> Result<bool> {
    let n = a.require_square()?;
    Ok(minpoly(a)?.degree() == Some(n))
}

/// `p(A) v` by Horner's scheme on vectors.
fn apply_poly(a: &Matrix, p: &Polynomial, v: &[FieldElement]) -> Vec<FieldElement> {
    let spec = a.spec();
    let mut acc = vec![spec.zero(); v.len()];
    for c in p.coeffs().iter().rev() {
        acc = a.mul_vec(&acc);
        for (x, vi) in acc.iter_mut().zip(v) {
            *x = &*x + &(c * vi);
        }
    }
    acc
}

/// A vector whose local minimal polynomial equals the minimal polynomial of
/// `a`, built deterministically from the standard basis.
///
/// Whenever a basis vector `e` has a local minimal polynomial `g` that does
/// not divide the current `f`, `lcm(f, g)` is split as `a * b` with `a | f`,
/// `b | g` and `gcd(a, b) = 1`; then `(f/a)(A) v + (g/b)(A) e` has minimal
/// polynomial `a * b`.
pub fn maximal_vector(a: &Matrix) -> Result<(Vec<FieldElement>, Polynomial)> {
    let n = a.require_square()?;
    let spec = a.spec();
    let mut v = unit_vector(spec, n, 0);
    let mut f = krylov(a, &v).0;
    for i in 1..n {
        if f.degree() == Some(n) {
            break;
        }
        let e = unit_vector(spec, n, i);
        let g = krylov(a, &e).0;
        if f.is_divisible_by(&g)? {
            continue;
        }
        let (split_a, split_b) = coprime_split(&f, &g)?;
        let left = apply_poly(a, &f.div_rem(&split_a)?.0, &v);
        let right = apply_poly(a, &g.div_rem(&split_b)?.0, &e);
        v = left.iter().zip(&right).map(|(x, y)| x + y).collect();
        f = &split_a * &split_b;
        debug_assert_eq!(krylov(a, &v).0, f);
    }
    Ok((v, f))
}

/// Splits `lcm(f, g)` into coprime `a | f` and `b | g`.
fn coprime_split(f: &Polynomial, g: &Polynomial) -> Result<(Polynomial, Polynomial)> {
    let l = f.lcm(g)?;
    let mut b = g.div_rem(&f.gcd(g)?)?.0.to_monic();
    loop {
        let cofactor = g.div_rem(&b)?.0;
        let d = b.gcd(&cofactor)?;
        if d.is_one() {
            break;
        }
        b = &b * &d;
    }
    let a = l.div_rem(&b)?.0.to_monic();
    Ok((a, b))
}

/// Candidate order for the cyclic-vector search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CyclicSearch {
    /// Exhaustive enumeration is used while `|S|^n` stays at or below this.
    pub enumeration_limit: u64,
    /// Number of pseudorandom candidates otherwise.
    pub attempts: usize,
    pub seed: u64,
}

impl Default for CyclicSearch {
    fn default() -> Self {
        CyclicSearch {
            enumeration_limit: 1 << 16,
            attempts: 64,
            seed: CYCLIC_SEARCH_SEED,
        }
    }
}

/// Entry alphabet for enumerated candidates: all of GF(p), or a few small
/// rationals.
fn alphabet(spec: FieldSpec) -> Vec<FieldElement> {
    match spec.modulus() {
        Some(p) => (0..p as i64).map(|v| spec.from_i64(v)).collect(),
        None => [0, 1, -1, 2].iter().map(|&v| spec.from_i64(v)).collect(),
    }
}

/// Similarity onto the companion matrix of the characteristic polynomial.
/// See [`cyclic_basis_with`].
pub fn cyclic_basis(a: &Matrix) -> Result<SimilarityTransform> {
    cyclic_basis_with(a, &CyclicSearch::default())
}

/// Returns `T` with `T^-1 A T = C(charpoly(A))`; the columns of `T` are the
/// Krylov vectors of a cyclic vector.
///
/// Candidates are tried in a fixed order: the standard basis, then every
/// vector over the entry alphabet when that is small enough, otherwise a
/// seeded pseudorandom sample. If none of those is cyclic the vector from
/// [`maximal_vector`] is used, which always is for a non-derogatory matrix.
pub fn cyclic_basis_with(a: &Matrix, search: &CyclicSearch) -> Result<SimilarityTransform> {
    let n = a.require_square()?;
    let spec = a.spec();
    let try_vector = |v: &[FieldElement]| -> Option<SimilarityTransform> {
        let (m, powers) = krylov(a, v);
        (m.degree() == Some(n)).then(|| {
            let t = Matrix::from_columns(spec, n, &powers);
            SimilarityTransform::new(t).expect("Krylov basis is invertible")
        })
    };

    for i in 0..n {
        if let Some(t) = try_vector(&unit_vector(spec, n, i)) {
            return finish(a, t);
        }
    }
    if !is_nonderogatory(a)? {
        return Err(Error::Derogatory);
    }
    let letters = alphabet(spec);
    let base = letters.len() as u64;
    let total = (0..n).try_fold(1u64, |acc, _| acc.checked_mul(base));
    match total {
        Some(total) if total <= search.enumeration_limit => {
            for mut idx in 1..total {
                let mut v = vec![spec.zero(); n];
                for slot in v.iter_mut().rev() {
                    *slot = letters[(idx % base) as usize].clone();
                    idx /= base;
                }
                if let Some(t) = try_vector(&v) {
                    return finish(a, t);
                }
            }
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
            for _ in 0..search.attempts {
                let v: Vec<_> = (0..n)
                    .map(|_| letters[(rng.next_u64() % base) as usize].clone())
                    .collect();
                if let Some(t) = try_vector(&v) {
                    return finish(a, t);
                }
            }
        }
    }
    let (v, _) = maximal_vector(a)?;
    match try_vector(&v) {
        Some(t) => finish(a, t),
        None => Err(Error::CyclicSearchExhausted),
    }
}

fn finish(a: &Matrix, t: SimilarityTransform) -> Result<SimilarityTransform> {
    debug_assert_eq!(t.conjugate(a)?, companion(&charpoly(a)?)?);
    Ok(t)
}
