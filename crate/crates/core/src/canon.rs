//! Canonical forms over F[x]: Smith normal form of `xI - A`, invariant
//! factors, and the Frobenius (rational canonical) block decomposition.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{companion, FieldElement, FieldSpec, Polynomial};
use crate::error::{Error, Result};
use crate::linalg::{maximal_vector, Matrix, SimilarityTransform};

/// Dense matrix with polynomial entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    spec: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(spec: FieldSpec, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            spec,
            rows,
            cols,
            entries: vec![Polynomial::zero(spec); rows * cols],
        }
    }

    /// The characteristic matrix `xI - A`.
    pub fn characteristic(a: &Matrix) -> Result<Self> {
        let n = a.require_square()?;
        let spec = a.spec();
        let mut m = Self::zeros(spec, n, n);
        for i in 0..n {
            for j in 0..n {
                let mut p = Polynomial::constant(-a.get(i, j));
                if i == j {
                    p = &p + &Polynomial::monomial(spec.one(), 1);
                }
                m.set(i, j, p);
            }
        }
        Ok(m)
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        debug_assert_eq!(p.spec(), self.spec);
        self.entries[i * self.cols + j] = p;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.entries.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.entries.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// `row[dst] -= q * row[src]`.
    fn sub_row_multiple(&mut self, dst: usize, src: usize, q: &Polynomial) {
        for c in 0..self.cols {
            let s = self.get(src, c);
            if s.is_zero() {
                continue;
            }
            let v = self.get(dst, c) - &(q * s);
            self.set(dst, c, v);
        }
    }

    /// `col[dst] -= q * col[src]`.
    fn sub_col_multiple(&mut self, dst: usize, src: usize, q: &Polynomial) {
        for r in 0..self.rows {
            let s = self.get(r, src);
            if s.is_zero() {
                continue;
            }
            let v = self.get(r, dst) - &(q * s);
            self.set(r, dst, v);
        }
    }

    /// Diagonal of the Smith normal form, monic, in divisibility order.
    ///
    /// Pivots on a lowest-degree entry of the working submatrix and clears its
    /// row and column by Euclidean division, repeating while remainders are
    /// left. The resulting diagonal is then put into divisibility order by
    /// replacing each pair `(d_i, d_j)`, `i < j`, with `(gcd, lcm)`.
    pub fn smith_diagonal(&self) -> Result<Vec<Polynomial>> {
        let mut m = self.clone();
        let size = m.rows.min(m.cols);
        let mut diag = Vec::with_capacity(size);
        for t in 0..size {
            loop {
                let mut best: Option<(usize, usize, usize)> = None;
                for i in t..m.rows {
                    for j in t..m.cols {
                        if let Some(d) = m.get(i, j).degree() {
                            if best.is_none_or(|(_, _, bd)| d < bd) {
                                best = Some((i, j, d));
                            }
                        }
                    }
                }
                let Some((pi, pj, _)) = best else {
                    break;
                };
                m.swap_rows(t, pi);
                m.swap_cols(t, pj);
                let pivot = m.get(t, t).clone();
                let mut clean = true;
                for i in t + 1..m.rows {
                    let (q, r) = m.get(i, t).div_rem(&pivot)?;
                    if !q.is_zero() {
                        m.sub_row_multiple(i, t, &q);
                    }
                    clean &= r.is_zero();
                }
                for j in t + 1..m.cols {
                    let (q, r) = m.get(t, j).div_rem(&pivot)?;
                    if !q.is_zero() {
                        m.sub_col_multiple(j, t, &q);
                    }
                    clean &= r.is_zero();
                }
                if clean {
                    break;
                }
            }
            diag.push(m.get(t, t).to_monic());
        }
        for i in 0..diag.len() {
            for j in i + 1..diag.len() {
                let g = diag[i].gcd(&diag[j])?;
                let l = diag[i].lcm(&diag[j])?;
                diag[i] = g;
                diag[j] = l;
            }
        }
        Ok(diag)
    }
}

/// Non-unit invariant factors `f_1 | f_2 | ... | f_t`, all monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFactors {
    factors: Vec<Polynomial>,
}

impl InvariantFactors {
    pub fn factors(&self) -> &[Polynomial] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// The last factor, which is the minimal polynomial.
    pub fn largest(&self) -> Option<&Polynomial> {
        self.factors.last()
    }

    pub fn product(&self, spec: FieldSpec) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::one(spec), |acc, f| &acc * f)
    }

    pub fn is_divisibility_chain(&self) -> bool {
        self.factors
            .windows(2)
            .all(|w| w[1].is_divisible_by(&w[0]).unwrap_or(false))
    }
}

/// Invariant factors of `A` from the Smith normal form of `xI - A`.
pub fn invariant_factors(a: &Matrix) -> Result<InvariantFactors> {
    let diag = PolyMatrix::characteristic(a)?.smith_diagonal()?;
    let factors = diag
        .into_iter()
        .filter(|f| f.degree().is_some_and(|d| d > 0))
        .collect();
    Ok(InvariantFactors { factors })
}

/// `T^-1 A T = diag(C(f_1), ..., C(f_t))` with `f_1 | ... | f_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusForm {
    pub factors: Vec<Polynomial>,
    pub blocks: Vec<Matrix>,
    pub transform: SimilarityTransform,
}

impl FrobeniusForm {
    pub fn block_diagonal(&self) -> Matrix {
        Matrix::block_diag(self.transform.matrix().spec(), &self.blocks).expect("same field")
    }
}

/// Frobenius blocks with an explicit similarity over the ground field.
///
/// Repeatedly takes a vector whose local minimal polynomial is the minimal
/// polynomial `m` (degree `d`) of the current operator, and splits off its
/// cyclic subspace `Z` with the invariant complement
/// `{w : phi(A^i w) = 0, i < d}`, where `phi` is a functional with
/// `phi(A^i v) = [i = d - 1]` on the Krylov basis of `Z`.
pub fn frobenius_blocks(a: &Matrix) -> Result<FrobeniusForm> {
    a.require_square()?;
    let spec = a.spec();
    let (mut factors, columns) = split_cyclic(a)?;
    // factors come out largest first; a stable sort by degree gives the
    // divisibility order and keeps equal factors in discovery order
    let mut groups: Vec<(Polynomial, Vec<Vec<FieldElement>>)> = Vec::new();
    let mut offset = 0;
    for f in factors.drain(..) {
        let d = f.degree().expect("nonconstant");
        groups.push((f, columns[offset..offset + d].to_vec()));
        offset += d;
    }
    groups.sort_by_key(|(f, _)| f.degree());
    let mut cols = Vec::with_capacity(a.rows());
    for (f, c) in groups {
        factors.push(f);
        cols.extend(c);
    }
    let t = Matrix::from_columns(spec, a.rows(), &cols);
    let transform = SimilarityTransform::new(t)?;
    let blocks = factors.iter().map(companion).collect::<Result<Vec<_>>>()?;
    let form = FrobeniusForm {
        factors,
        blocks,
        transform,
    };
    if form.transform.conjugate(a)? != form.block_diagonal() {
        return Err(Error::InternalVerificationFailed("Frobenius similarity"));
    }
    Ok(form)
}

/// Returns the invariant factors largest first and the basis columns, one
/// Krylov group per factor, in the same order.
fn split_cyclic(a: &Matrix) -> Result<(Vec<Polynomial>, Vec<Vec<FieldElement>>)> {
    let n = a.rows();
    let spec = a.spec();
    let (v, m) = maximal_vector(a)?;
    let d = m.degree().expect("minimal polynomial is nonconstant");
    let mut krylov = Vec::with_capacity(d);
    let mut w = v;
    for _ in 0..d {
        let next = a.mul_vec(&w);
        krylov.push(w);
        w = next;
    }
    if d == n {
        return Ok((vec![m], krylov));
    }

    let k = Matrix::from_columns(spec, n, &krylov);
    let mut target = vec![spec.zero(); d];
    target[d - 1] = spec.one();
    let phi = k
        .transpose()
        .solve_any(&target)?
        .ok_or(Error::InternalVerificationFailed("Krylov basis rank"))?;
    let at = a.transpose();
    let mut functionals = Vec::with_capacity(d);
    let mut row = phi;
    for _ in 0..d {
        let next = at.mul_vec(&row);
        functionals.push(row);
        row = next;
    }
    let constraints = Matrix::from_fn(spec, d, n, |i, j| functionals[i][j].clone());
    let complement = constraints.nullspace();
    debug_assert_eq!(complement.len(), n - d);
    let basis = Matrix::from_columns(spec, n, &complement);
    let image = a * &basis;
    let mut restricted_cols = Vec::with_capacity(n - d);
    for j in 0..n - d {
        let coords =
            basis
                .solve_any(&image.col_vec(j))?
                .ok_or(Error::InternalVerificationFailed(
                    "complement is not invariant",
                ))?;
        restricted_cols.push(coords);
    }
    let restricted = Matrix::from_columns(spec, n - d, &restricted_cols);
    let (mut factors, sub_cols) = split_cyclic(&restricted)?;
    let mut columns = krylov;
    for c in &sub_cols {
        columns.push(basis.mul_vec(c));
    }
    factors.insert(0, m);
    Ok((factors, columns))
}
