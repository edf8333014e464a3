//! Closed-form determinant of a bordered diagonal matrix over F[x].

use alloc::vec::Vec;

use crate::algebra::{FieldElement, FieldSpec, Polynomial};
use crate::canon::PolyMatrix;
use crate::error::{Error, Result};

/// `a = (a_1, ..., a_n)` and `u = (u_2, ..., u_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorderedInstance {
    spec: FieldSpec,
    n: usize,
    a: Vec<FieldElement>,
    u: Vec<FieldElement>,
}

impl BorderedInstance {
    pub fn new(spec: FieldSpec, a: Vec<FieldElement>, u: Vec<FieldElement>) -> Result<Self> {
        let n = a.len();
        if n < 2 || u.len() != n - 1 {
            return Err(Error::BadDimension);
        }
        if a.iter().chain(u.iter()).any(|v| v.spec() != spec) {
            return Err(Error::FieldMismatch);
        }
        Ok(BorderedInstance { spec, n, a, u })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    /// `a_i`, 1-based.
    pub fn a(&self, i: usize) -> &FieldElement {
        &self.a[i - 1]
    }

    /// `u_i` for `2 <= i <= n`.
    pub fn u(&self, i: usize) -> &FieldElement {
        &self.u[i - 2]
    }
}

/// `x^n + (u_n + a_1 - a_n) x^(n-1) + (a_1 u_n + sum_{i=2}^{n-1} a_i u_i) x^(n-2)`.
pub fn bordered_det(inst: &BorderedInstance) -> Polynomial {
    let n = inst.n;
    let spec = inst.spec;
    let mut coeffs = alloc::vec![spec.zero(); n + 1];
    coeffs[n] = spec.one();
    coeffs[n - 1] = &(inst.u(n) + inst.a(1)) - inst.a(n);
    let mut low = inst.a(1) * inst.u(n);
    for i in 2..n {
        low = &low + &(inst.a(i) * inst.u(i));
    }
    coeffs[n - 2] = low;
    Polynomial::new(spec, coeffs).expect("same field")
}

/// The matrix whose determinant [`bordered_det`] computes:
///
/// ```text
/// a_1+x  a_2  ...  a_{n-1}  a_n
///   0     x   ...    0      u_2
///   .          .            .
///   0     0   ...    x      u_{n-1}
///   x     0   ...    0      x+u_n
/// ```
pub fn bordered_matrix(inst: &BorderedInstance) -> PolyMatrix {
    let n = inst.n;
    let spec = inst.spec;
    let x = Polynomial::monomial(spec.one(), 1);
    let mut m = PolyMatrix::zeros(spec, n, n);
    for j in 0..n {
        m.set(0, j, Polynomial::constant(inst.a(j + 1).clone()));
    }
    m.set(0, 0, &x + m.get(0, 0));
    for i in 1..n - 1 {
        m.set(i, i, x.clone());
        m.set(i, n - 1, Polynomial::constant(inst.u(i + 1).clone()));
    }
    m.set(n - 1, 0, x.clone());
    m.set(n - 1, n - 1, &x + &Polynomial::constant(inst.u(n).clone()));
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn q(vals: &[i64]) -> Vec<FieldElement> {
        vals.iter().map(|&v| Q.from_i64(v)).collect()
    }

    #[test]
    fn three_by_three() {
        let inst = BorderedInstance::new(Q, q(&[1, 2, 3]), q(&[4, 5])).unwrap();
        assert_eq!(
            bordered_det(&inst),
            Polynomial::from_i64s(Q, &[0, 13, 3, 1])
        );
    }

    #[test]
    fn all_zero_collapses() {
        let inst = BorderedInstance::new(Q, q(&[0; 5]), q(&[0; 4])).unwrap();
        assert_eq!(bordered_det(&inst), Polynomial::monomial(Q.one(), 5));
    }

    #[test]
    fn two_by_two() {
        // x^2 + (u2 + a1 - a2) x + a1 u2 with a = (3, 7), u2 = 5
        let inst = BorderedInstance::new(Q, q(&[3, 7]), q(&[5])).unwrap();
        assert_eq!(bordered_det(&inst), Polynomial::from_i64s(Q, &[15, 1, 1]));
        let m = bordered_matrix(&inst);
        assert_eq!(m.get(1, 0), &Polynomial::from_i64s(Q, &[0, 1]));
        assert_eq!(m.get(1, 1), &Polynomial::from_i64s(Q, &[5, 1]));
    }

    #[test]
    fn bad_lengths() {
        assert_eq!(
            BorderedInstance::new(Q, q(&[1]), q(&[])),
            Err(Error::BadDimension)
        );
        assert_eq!(
            BorderedInstance::new(Q, q(&[1, 2, 3]), q(&[1])),
            Err(Error::BadDimension)
        );
    }
}
