//! Division-free characteristic polynomial (Berkowitz).

use alloc::vec;
use alloc::vec::Vec;

use super::Matrix;
use crate::algebra::{FieldElement, Polynomial};
use crate::error::Result;

/// `det(xI - A)`, monic of degree n.
///
/// Uses only ring operations, so it is valid in every characteristic. Works
/// through the leading principal submatrices: each step multiplies the
/// running coefficient vector by a lower-triangular Toeplitz matrix whose
/// first column is `1, -a_rr, -R S, -R M S, ..., -R M^(r-2) S`, where `M` is
/// the previous submatrix, `R` the new row and `S` the new column.
pub fn charpoly(a: &Matrix) -> Result<Polynomial> {
    let n = a.require_square()?;
    let spec = a.spec();
    if n == 0 {
        return Ok(Polynomial::one(spec));
    }
    // descending coefficients: coeffs[i] multiplies x^(r - i)
    let mut coeffs = vec![spec.one(), -a.get(0, 0)];
    for r in 1..n {
        let mut toeplitz = Vec::with_capacity(r + 2);
        toeplitz.push(spec.one());
        toeplitz.push(-a.get(r, r));
        // s = M^j S, starting from S
        let mut s: Vec<FieldElement> = (0..r).map(|i| a.get(i, r).clone()).collect();
        for j in 0..r {
            let rs = (0..r).fold(spec.zero(), |acc, t| {
                let (x, y) = (a.get(r, t), &s[t]);
                if x.is_zero() || y.is_zero() {
                    acc
                } else {
                    &acc + &(x * y)
                }
            });
            toeplitz.push(-&rs);
            if j + 1 < r {
                s = (0..r)
                    .map(|i| {
                        (0..r).fold(spec.zero(), |acc, t| {
                            let (x, y) = (a.get(i, t), &s[t]);
                            if x.is_zero() || y.is_zero() {
                                acc
                            } else {
                                &acc + &(x * y)
                            }
                        })
                    })
                    .collect();
            }
        }
        let next: Vec<FieldElement> = (0..r + 2)
            .map(|i| {
                (0..=i.min(r)).fold(spec.zero(), |acc, j| {
                    let (t, c) = (&toeplitz[i - j], &coeffs[j]);
                    if t.is_zero() || c.is_zero() {
                        acc
                    } else {
                        &acc + &(t * c)
                    }
                })
            })
            .collect();
        coeffs = next;
    }
    coeffs.reverse();
    Ok(Polynomial::new(spec, coeffs).expect("entries share the field"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{companion, FieldSpec};
    use crate::error::Error;

    #[test]
    fn identity_two() {
        let q = FieldSpec::Rationals;
        let p = charpoly(&Matrix::identity(q, 2)).unwrap();
        assert_eq!(p, Polynomial::from_i64s(q, &[1, -2, 1]));
    }

    #[test]
    fn companion_over_gf2() {
        let f2 = FieldSpec::prime_field(2).unwrap();
        let p = Polynomial::from_i64s(f2, &[1, 1, 0, 1]);
        assert_eq!(charpoly(&companion(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn general_two_by_two() {
        let q = FieldSpec::Rationals;
        let a = Matrix::from_i64_rows(q, &[&[1, 2], &[3, 4]]);
        // x^2 - 5x - 2
        assert_eq!(
            charpoly(&a).unwrap(),
            Polynomial::from_i64s(q, &[-2, -5, 1])
        );
    }

    #[test]
    fn rejects_rectangular() {
        let a = Matrix::zeros(FieldSpec::Rationals, 2, 3);
        assert_eq!(charpoly(&a), Err(Error::NotSquare));
    }
}
