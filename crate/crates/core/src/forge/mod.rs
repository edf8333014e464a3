//! Square-zero perturbations with a prescribed characteristic polynomial.
//!
//! For `A = diag(0_k, A22)` with `A22` invertible and non-derogatory and
//! `k < n - k`, every monic `q` of degree `n` with the trace of `A` is the
//! characteristic polynomial of some `A + N` with `N^2 = 0`.
//!
//! The construction works in a basis where `A22` is a companion matrix. The
//! coefficients of `charpoly(A + N(a))` are affine in the parameters `a` of
//! [`build_parametric_n`], so they are probed at zero and at unit
//! assignments and one square linear system is solved. The result is
//! re-verified exactly before a certificate is returned.

mod bordered;
mod parametric;

use alloc::vec::Vec;

pub use bordered::{bordered_det, bordered_matrix, BorderedInstance};
pub use parametric::{build_parametric_n, selected_parameters, ForgeParameters, SelectedParameter};

use crate::algebra::{companion, FieldElement, Polynomial};
use crate::error::{Error, Result};
use crate::linalg::{
    charpoly, cyclic_basis, is_nonderogatory, solve_linear, Matrix, SimilarityTransform,
};

/// A validated input: `A = diag(0_k, A22)` and a target `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForgeProblem {
    n: usize,
    k: usize,
    a: Matrix,
    q: Polynomial,
}

impl ForgeProblem {
    /// Checks, in order: field agreement, squareness, block shape, `k < n - k`,
    /// the target's degree and monicity, the trace, and finally that `A22` is
    /// invertible (when `k > 0`) and non-derogatory.
    pub fn new(a: Matrix, k: usize, q: Polynomial) -> Result<Self> {
        if a.spec() != q.spec() {
            return Err(Error::FieldMismatch);
        }
        let n = a.require_square()?;
        if n == 0 {
            return Err(Error::BadDimension);
        }
        if k > n || !zero_border(&a, k) {
            return Err(Error::BadBlockShape);
        }
        if k >= n - k {
            return Err(Error::EqualSplitUnsupported { n, k });
        }
        if q.degree() != Some(n) {
            return Err(if q.is_monic() {
                Error::DegreeMismatch
            } else {
                Error::NotMonic
            });
        }
        if !q.is_monic() {
            return Err(Error::NotMonic);
        }
        if q.trace()? != a.trace()? {
            return Err(Error::TraceMismatch);
        }
        let a22 = a.block(k, k, n - k, n - k)?;
        if k > 0 && a22.determinant()?.is_zero() {
            return Err(Error::NotInvertible);
        }
        if !is_nonderogatory(&a22)? {
            return Err(Error::Derogatory);
        }
        Ok(ForgeProblem { n, k, a, q })
    }

    /// Builds `diag(0_k, A22)`.
    pub fn from_block(k: usize, a22: &Matrix, q: Polynomial) -> Result<Self> {
        let m = a22.require_square()?;
        let mut a = Matrix::zeros(a22.spec(), k + m, k + m);
        a.set_block(k, k, a22);
        Self::new(a, k, q)
    }

    pub fn n(&self) -> usize {
        self.n
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

    pub fn a22(&self) -> Matrix {
        let m = self.n - self.k;
        self.a.block(self.k, self.k, m, m).expect("in range")
    }
}

fn zero_border(a: &Matrix, k: usize) -> bool {
    let n = a.rows();
    (0..n).all(|i| (0..n).all(|j| (i >= k && j >= k) || a.get(i, j).is_zero()))
}

/// How the probe system was solved, in the order of [`selected_parameters`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub parameters: Vec<SelectedParameter>,
    /// Coefficient of `x^degree` in the probe column of each parameter; the
    /// columns vanish below that degree.
    pub pivots: Vec<FieldElement>,
    /// Constant term of the characteristic polynomial of `A22`.
    pub u0: FieldElement,
    /// Solved parameter values.
    pub solution: Vec<FieldElement>,
}

/// `N^2 = 0` and `charpoly(A + N) = q_achieved`, both re-checked exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForgeCertificate {
    pub n: Matrix,
    pub q_achieved: Polynomial,
    /// `diag(I_k, T)` with `T^-1 A22 T` a companion matrix.
    pub transform: SimilarityTransform,
    /// Whether `A + N` is non-derogatory. Diagnostic only.
    pub nonderogatory_result: bool,
    /// Present when `k > 0`.
    pub probe: Option<ProbeReport>,
}

/// The `k = 0` construction: for companion `C(p)`, the matrix whose last
/// column holds `u_i - v_i` in rows `0..n-1` (coefficients of `p` and `q`)
/// satisfies `N^2 = 0` and `charpoly(C(p) + N) = q`.
pub fn forge_k0(p: &Polynomial, q: &Polynomial) -> Result<Matrix> {
    if p.spec() != q.spec() {
        return Err(Error::FieldMismatch);
    }
    if !p.is_monic() || !q.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = p.degree().expect("monic");
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    if q.degree() != Some(n) {
        return Err(Error::DegreeMismatch);
    }
    if p.trace()? != q.trace()? {
        return Err(Error::TraceMismatch);
    }
    let mut m = Matrix::zeros(p.spec(), n, n);
    for i in 0..n - 1 {
        m.set(i, n - 1, &p.coeff(i) - &q.coeff(i));
    }
    Ok(m)
}

/// Runs the construction and returns a verified certificate.
pub fn forge(problem: &ForgeProblem) -> Result<ForgeCertificate> {
    let (n, k) = (problem.n, problem.k);
    let spec = problem.a.spec();
    let a22 = problem.a22();
    let t = cyclic_basis(&a22)?;
    let p = charpoly(&a22)?;
    let transform = t.embed(k);

    let (n_hat, probe) = if k == 0 {
        (forge_k0(&p, &problem.q)?, None)
    } else {
        let mut a_hat = Matrix::zeros(spec, n, n);
        a_hat.set_block(k, k, &companion(&p)?);
        let (n_hat, report) = probe_and_solve(&a_hat, n, k, &problem.q, p.constant_term())?;
        (n_hat, Some(report))
    };
    let n_mat = if transform.is_identity() {
        n_hat
    } else {
        transform.unconjugate(&n_hat)?
    };

    if !n_mat.is_square_zero()? {
        return Err(Error::InternalVerificationFailed("N is not square-zero"));
    }
    let sum = &problem.a + &n_mat;
    let q_achieved = charpoly(&sum)?;
    if q_achieved != problem.q {
        return Err(Error::InternalVerificationFailed(
            "characteristic polynomial differs from the target",
        ));
    }
    let nonderogatory_result = is_nonderogatory(&sum)?;
    Ok(ForgeCertificate {
        n: n_mat,
        q_achieved,
        transform,
        nonderogatory_result,
        probe,
    })
}

fn probe_and_solve(
    a_hat: &Matrix,
    n: usize,
    k: usize,
    q: &Polynomial,
    u0: FieldElement,
) -> Result<(Matrix, ProbeReport)> {
    let spec = a_hat.spec();
    let coeffs_at = |params: &ForgeParameters| -> Result<Vec<FieldElement>> {
        let m = a_hat + &build_parametric_n(n, k, params)?;
        Ok(charpoly(&m)?.padded_coeffs(n + 1))
    };
    let zero = ForgeParameters::zero(spec, n, k)?;
    let c0 = coeffs_at(&zero)?;
    let selected = selected_parameters(n, k)?;
    let mut system = Matrix::zeros(spec, n - 1, n - 1);
    let mut pivots = Vec::with_capacity(n - 1);
    for (j, sel) in selected.iter().enumerate() {
        let mut unit = zero.clone();
        unit.set(sel.i, sel.s, spec.one())?;
        let delta: Vec<FieldElement> = coeffs_at(&unit)?
            .iter()
            .zip(&c0)
            .map(|(c, z)| c - z)
            .collect();
        // trace of N(a) is zero, so the top two coefficients never move
        if !delta[n - 1].is_zero() || !delta[n].is_zero() {
            return Err(Error::InternalVerificationFailed("probe moved the trace"));
        }
        if delta[..sel.degree].iter().any(|v| !v.is_zero()) || delta[sel.degree].is_zero() {
            return Err(Error::InternalVerificationFailed(
                "probe column is not triangular",
            ));
        }
        pivots.push(delta[sel.degree].clone());
        for (d, v) in delta.into_iter().take(n - 1).enumerate() {
            system.set(d, j, v);
        }
    }
    let rhs: Vec<FieldElement> = q
        .padded_coeffs(n + 1)
        .iter()
        .zip(&c0)
        .map(|(t, z)| t - z)
        .take(n - 1)
        .collect();
    let x = solve_linear(&system, &Matrix::column(spec, rhs))
        .map_err(|_| Error::InternalVerificationFailed("probe system is singular"))?;
    let mut params = zero;
    let solution: Vec<FieldElement> = (0..n - 1).map(|j| x.get(j, 0).clone()).collect();
    for (sel, v) in selected.iter().zip(&solution) {
        params.set(sel.i, sel.s, v.clone())?;
    }
    let n_hat = build_parametric_n(n, k, &params)?;
    Ok((
        n_hat,
        ProbeReport {
            parameters: selected,
            pivots,
            u0,
            solution,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime_field(p).unwrap()
    }

    #[test]
    fn k0_closed_form_example() {
        let p = Polynomial::from_i64s(Q, &[2, 3, 1]);
        let q = Polynomial::from_i64s(Q, &[7, 3, 1]);
        let n = forge_k0(&p, &q).unwrap();
        assert_eq!(n, Matrix::from_i64_rows(Q, &[&[0, -5], &[0, 0]]));
        assert!(forge_k0(&p, &p).unwrap().is_zero());
        let bad = Polynomial::from_i64s(Q, &[1, 0, 1, 1]);
        assert_eq!(
            forge_k0(&Polynomial::from_i64s(Q, &[1, 1, 0, 1]), &bad),
            Err(Error::TraceMismatch)
        );
    }

    #[test]
    fn k0_through_forge() {
        let a = companion(&Polynomial::from_i64s(Q, &[2, 3, 1])).unwrap();
        let q = Polynomial::from_i64s(Q, &[7, 3, 1]);
        let cert = forge(&ForgeProblem::new(a, 0, q.clone()).unwrap()).unwrap();
        assert_eq!(cert.n, Matrix::from_i64_rows(Q, &[&[0, -5], &[0, 0]]));
        assert_eq!(cert.q_achieved, q);
        assert!(cert.probe.is_none());
    }

    #[test]
    fn gf2_three_one() {
        let f2 = gf(2);
        let a22 = companion(&Polynomial::from_i64s(f2, &[1, 1, 1])).unwrap();
        let q = Polynomial::from_i64s(f2, &[1, 0, 1, 1]);
        let cert = forge(&ForgeProblem::from_block(1, &a22, q.clone()).unwrap()).unwrap();
        assert!(cert.n.is_square_zero().unwrap());
        assert_eq!(cert.q_achieved, q);
        let probe = cert.probe.unwrap();
        assert_eq!(probe.pivots, [probe.u0.clone(), probe.u0.clone()]);
    }

    #[test]
    fn non_companion_block_over_q() {
        let a22 = Matrix::from_i64_rows(Q, &[&[2, 1, 0], &[0, 2, 0], &[1, 0, -1]]);
        let q = Polynomial::from_i64s(Q, &[-4, 0, 9, 0, -3, 1]);
        let problem = ForgeProblem::from_block(2, &a22, q.clone()).unwrap();
        let cert = forge(&problem).unwrap();
        assert!(cert.n.is_square_zero().unwrap());
        assert_eq!(charpoly(&(problem.matrix() + &cert.n)).unwrap(), q);
        assert!(!cert.transform.is_identity());
    }

    #[test]
    fn validation_errors() {
        let a22 = companion(&Polynomial::from_i64s(Q, &[1, 0, 1])).unwrap();
        let q4 = Polynomial::from_i64s(Q, &[1, 0, 0, 0, 1]);
        assert_eq!(
            ForgeProblem::from_block(2, &a22, q4),
            Err(Error::EqualSplitUnsupported { n: 4, k: 2 })
        );
        let q3 = Polynomial::from_i64s(Q, &[1, 0, 1, 1]);
        assert_eq!(
            ForgeProblem::from_block(1, &a22, q3),
            Err(Error::TraceMismatch)
        );
        let sing = companion(&Polynomial::from_i64s(Q, &[0, 1, 1])).unwrap();
        let q = Polynomial::from_i64s(Q, &[1, 0, 1, 1]);
        assert_eq!(
            ForgeProblem::from_block(1, &sing, q.clone()),
            Err(Error::NotInvertible)
        );
        assert_eq!(
            ForgeProblem::from_block(
                1,
                &Matrix::identity(Q, 2),
                Polynomial::from_i64s(Q, &[1, 0, -2, 1])
            ),
            Err(Error::Derogatory)
        );
        let mut a = Matrix::zeros(Q, 3, 3);
        a.set_block(1, 1, &a22);
        a.set(0, 2, Q.one());
        assert_eq!(
            ForgeProblem::new(a, 1, q.clone()),
            Err(Error::BadBlockShape)
        );
        let not_monic = Polynomial::from_i64s(Q, &[1, 0, 0, 2]);
        assert_eq!(
            ForgeProblem::from_block(1, &a22, not_monic),
            Err(Error::NotMonic)
        );
        assert_eq!(
            ForgeProblem::from_block(1, &a22, Polynomial::from_i64s(Q, &[1, 1])),
            Err(Error::DegreeMismatch)
        );
    }
}
