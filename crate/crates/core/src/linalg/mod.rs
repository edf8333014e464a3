//! Dense exact matrices over a [`FieldSpec`].
//!
//! Everything here is exact; pivoting picks the first nonzero entry.

mod charpoly;
mod krylov;
mod solve;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::algebra::{FieldElement, FieldSpec};
use crate::error::{Error, Result};

pub use charpoly::charpoly;
pub use krylov::{
    cyclic_basis, cyclic_basis_with, is_nonderogatory, local_minpoly, maximal_vector, minpoly,
    CyclicSearch, SimilarityTransform, CYCLIC_SEARCH_SEED,
};
pub use solve::solve_linear;

/// Default cap on matrix dimensions accepted at the IO boundary.
pub const DEFAULT_MAX_DIM: usize = 64;

/// Row-major dense matrix. Every entry belongs to `spec`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    spec: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(spec: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            spec,
            rows,
            cols,
            entries: vec![spec.zero(); rows * cols],
        }
    }

    pub fn identity(spec: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(spec, n, n);
        for i in 0..n {
            m.set(i, i, spec.one());
        }
        m
    }

    pub fn from_fn(
        spec: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            spec,
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from rows; all rows must have the same nonzero length.
    pub fn from_rows(spec: FieldSpec, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch);
        }
        let entries: Vec<_> = rows.into_iter().flatten().collect();
        if entries.iter().any(|e| e.spec() != spec) {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix {
            spec,
            rows: r,
            cols: c,
            entries,
        })
    }

    /// Convenience constructor for small literal matrices.
    pub fn from_i64_rows(spec: FieldSpec, rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&v| spec.from_i64(v)).collect())
            .collect();
        Self::from_rows(spec, data).expect("rectangular literal")
    }

    /// Column vector from entries.
    pub fn column(spec: FieldSpec, entries: Vec<FieldElement>) -> Self {
        let rows = entries.len();
        Matrix {
            spec,
            rows,
            cols: 1,
            entries,
        }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(spec: FieldSpec, rows: usize, columns: &[Vec<FieldElement>]) -> Self {
        Self::from_fn(spec, rows, columns.len(), |i, j| columns[j][i].clone())
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        debug_assert_eq!(v.spec(), self.spec);
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col_vec(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldElement::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare)
        }
    }

    pub fn check_dimension_cap(&self, cap: usize) -> Result<()> {
        let dim = self.rows.max(self.cols);
        if dim > cap {
            return Err(Error::DimensionTooLarge { dim, cap });
        }
        Ok(())
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.spec != other.spec {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch);
        }
        Ok(self * other)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Matrix {
            spec: self.spec,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.spec, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn trace(&self) -> Result<FieldElement> {
        let n = self.require_square()?;
        Ok((0..n).fold(self.spec.zero(), |acc, i| &acc + self.get(i, i)))
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, mut e: u64) -> Result<Self> {
        let n = self.require_square()?;
        let mut base = self.clone();
        let mut acc = Self::identity(self.spec, n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Whether `self * self` is the zero matrix.
    pub fn is_square_zero(&self) -> Result<bool> {
        self.require_square()?;
        Ok((self * self).is_zero())
    }

    /// Block-diagonal assembly `diag(B_1, ..., B_t)`.
    pub fn block_diag(spec: FieldSpec, blocks: &[Matrix]) -> Result<Self> {
        if blocks.iter().any(|b| b.spec != spec) {
            return Err(Error::FieldMismatch);
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(spec, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(out)
    }

    /// Copies the `rows x cols` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Result<Self> {
        if r0 + rows > self.rows || c0 + cols > self.cols {
            return Err(Error::DimensionMismatch);
        }
        Ok(Self::from_fn(self.spec, rows, cols, |i, j| {
            self.get(r0 + i, c0 + j).clone()
        }))
    }

    /// Overwrites the block starting at `(r0, c0)` with `b`.
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        assert!(
            r0 + b.rows <= self.rows && c0 + b.cols <= self.cols,
            "block out of range"
        );
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    /// `self * v` for a vector given as a slice.
    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.spec.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "shape mismatch in addition"
        );
        Matrix {
            spec: self.spec,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "shape mismatch in subtraction"
        );
        Matrix {
            spec: self.spec,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            spec: self.spec,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.spec, self.rows, rhs.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(t, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{companion, Polynomial};

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn identity_squared() {
        let i2 = Matrix::identity(Q, 2);
        assert_eq!(&i2 * &i2, i2);
    }

    #[test]
    fn block_diag_of_scalars() {
        let b = Matrix::block_diag(
            Q,
            &[
                Matrix::from_i64_rows(Q, &[&[0]]),
                Matrix::from_i64_rows(Q, &[&[1]]),
            ],
        )
        .unwrap();
        assert_eq!(b, Matrix::from_i64_rows(Q, &[&[0, 0], &[0, 1]]));
        assert_eq!(b.block(1, 1, 1, 1).unwrap(), Matrix::identity(Q, 1));
        assert_eq!(b.block(1, 1, 2, 1), Err(Error::DimensionMismatch));
    }

    #[test]
    fn square_zero_examples() {
        let n = Matrix::from_i64_rows(Q, &[&[0, 1], &[0, 0]]);
        assert!((&n * &n).is_zero());
        assert!(n.is_square_zero().unwrap());
        assert!(!Matrix::identity(Q, 1).is_square_zero().unwrap());
        assert!(Matrix::zeros(Q, 3, 3).is_square_zero().unwrap());
        assert_eq!(
            Matrix::zeros(Q, 2, 3).is_square_zero(),
            Err(Error::NotSquare)
        );
    }

    #[test]
    fn shape_and_field_errors() {
        let a = Matrix::zeros(Q, 2, 3);
        assert_eq!(a.checked_mul(&a), Err(Error::DimensionMismatch));
        let b = Matrix::zeros(FieldSpec::prime_field(3).unwrap(), 2, 3);
        assert_eq!(a.checked_add(&b), Err(Error::FieldMismatch));
        assert_eq!(
            Matrix::from_rows(Q, vec![vec![Q.one()], vec![]]),
            Err(Error::DimensionMismatch)
        );
    }

    #[test]
    fn pow_matches_repeated_product() {
        let c = companion(&Polynomial::from_i64s(Q, &[1, 0, 0, 1])).unwrap();
        let mut acc = Matrix::identity(Q, 3);
        for e in 0..8 {
            assert_eq!(c.pow(e).unwrap(), acc);
            acc = &acc * &c;
        }
        // C(x^3 + 1)^3 = -I
        assert_eq!(c.pow(3).unwrap(), -&Matrix::identity(Q, 3));
    }

    #[test]
    fn dimension_cap() {
        let m = Matrix::zeros(Q, 3, 3);
        assert!(m.check_dimension_cap(3).is_ok());
        assert_eq!(
            m.check_dimension_cap(2),
            Err(Error::DimensionTooLarge { dim: 3, cap: 2 })
        );
    }
}
