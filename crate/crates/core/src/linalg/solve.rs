//! Gaussian elimination: rank, determinant, inverse, linear solves, kernels.

use alloc::vec::Vec;

use super::Matrix;
use crate::algebra::FieldElement;
use crate::error::{Error, Result};

/// Reduced row echelon form together with the pivot column of each nonzero row.
fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols() {
        if row == a.rows() {
            break;
        }
        let Some(p) = (row..a.rows()).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        a.swap_rows(row, p);
        let inv = a.get(row, col).inv().expect("pivot is nonzero");
        a.scale_row(row, &inv);
        for r in 0..a.rows() {
            if r != row {
                let f = a.get(r, col).clone();
                if !f.is_zero() {
                    a.add_row_multiple(r, row, &-&f);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

impl Matrix {
    pub(crate) fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.entries.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, f: &FieldElement) {
        for c in 0..self.cols {
            let idx = i * self.cols + c;
            self.entries[idx] = &self.entries[idx] * f;
        }
    }

    /// `row[dst] += f * row[src]`.
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, f: &FieldElement) {
        for c in 0..self.cols {
            let s = &self.entries[src * self.cols + c];
            if s.is_zero() {
                continue;
            }
            let v = s * f;
            let idx = dst * self.cols + c;
            self.entries[idx] = &self.entries[idx] + &v;
        }
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    /// Determinant by elimination with first-nonzero pivoting.
    pub fn determinant(&self) -> Result<FieldElement> {
        let n = self.require_square()?;
        let mut a = self.clone();
        let mut det = self.spec.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return Ok(self.spec.zero());
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let pivot = a.get(col, col).clone();
            det = &det * &pivot;
            let inv = pivot.inv()?;
            for r in col + 1..n {
                let f = a.get(r, col).clone();
                if !f.is_zero() {
                    a.add_row_multiple(r, col, &-&(&f * &inv));
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.require_square()?;
        let mut aug = Matrix::zeros(self.spec, n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Matrix::identity(self.spec, n));
        let (r, pivots) = rref(&aug);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        r.block(0, n, n, n)
    }

    /// Basis of the right kernel `{v : self * v = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<FieldElement>> {
        let (r, pivots) = rref(self);
        let spec = self.spec;
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = alloc::vec![spec.zero(); self.cols];
            v[free] = spec.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `self * v = b`, with free variables set to zero.
    pub fn solve_any(&self, b: &[FieldElement]) -> Result<Option<Vec<FieldElement>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch);
        }
        let mut aug = Matrix::zeros(self.spec, self.rows, self.cols + 1);
        aug.set_block(0, 0, self);
        for (i, v) in b.iter().enumerate() {
            if v.spec() != self.spec {
                return Err(Error::FieldMismatch);
            }
            aug.set(i, self.cols, v.clone());
        }
        let (r, pivots) = rref(&aug);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = alloc::vec![self.spec.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }
}

/// Unique solution of `m * x = b` for square invertible `m` and column `b`.
pub fn solve_linear(m: &Matrix, b: &Matrix) -> Result<Matrix> {
    let n = m.require_square()?;
    if m.spec() != b.spec() {
        return Err(Error::FieldMismatch);
    }
    if b.rows() != n || b.cols() != 1 {
        return Err(Error::DimensionMismatch);
    }
    let mut aug = Matrix::zeros(m.spec(), n, n + 1);
    aug.set_block(0, 0, m);
    aug.set_block(0, n, b);
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::SingularMatrix);
    }
    r.block(0, n, n, 1)
}
