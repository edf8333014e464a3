//! Independent oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use charpoly_forge_core::canon::PolyMatrix;
use charpoly_forge_core::{FieldElement, FieldSpec, Matrix, Polynomial};
use rand::Rng;

pub const Q: FieldSpec = FieldSpec::Rationals;

pub fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime_field(p).unwrap()
}

/// The fields exercised by randomized tests.
pub fn fields() -> Vec<FieldSpec> {
    vec![Q, gf(2), gf(3), gf(5), gf(7), gf(101)]
}

/// Laplace expansion along the first row. Exponential, so only for small n.
pub fn cofactor_det(m: &PolyMatrix) -> Polynomial {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let spec = m.spec();
    fn rec(m: &PolyMatrix, rows: &[usize], cols: &[usize], spec: FieldSpec) -> Polynomial {
        if rows.is_empty() {
            return Polynomial::one(spec);
        }
        let r = rows[0];
        let mut acc = Polynomial::zero(spec);
        for (idx, &c) in cols.iter().enumerate() {
            let entry = m.get(r, c);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = rec(m, &rows[1..], &rest, spec);
            let term = entry * &minor;
            acc = if idx % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        acc
    }
    let idx: Vec<usize> = (0..n).collect();
    rec(m, &idx, &idx, spec)
}

/// `det(xI - A)` by cofactor expansion.
pub fn charpoly_oracle(a: &Matrix) -> Polynomial {
    cofactor_det(&PolyMatrix::characteristic(a).unwrap())
}

pub fn random_element<R: Rng>(spec: FieldSpec, rng: &mut R) -> FieldElement {
    match spec.modulus() {
        Some(p) => spec.from_i64(rng.gen_range(0..p as i64)),
        None => {
            let num = spec.from_i64(rng.gen_range(-5..=5));
            let den = spec.from_i64(rng.gen_range(1..=3));
            &num / &den
        }
    }
}

pub fn random_nonzero<R: Rng>(spec: FieldSpec, rng: &mut R) -> FieldElement {
    loop {
        let v = random_element(spec, rng);
        if !v.is_zero() {
            return v;
        }
    }
}

pub fn random_matrix<R: Rng>(spec: FieldSpec, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    Matrix::from_fn(spec, rows, cols, |_, _| random_element(spec, rng))
}

/// Monic of degree `d` with random lower coefficients.
pub fn random_monic<R: Rng>(spec: FieldSpec, d: usize, rng: &mut R) -> Polynomial {
    let mut c: Vec<FieldElement> = (0..d).map(|_| random_element(spec, rng)).collect();
    c.push(spec.one());
    Polynomial::new(spec, c).unwrap()
}

/// Monic of degree `d >= 1` with nonzero constant term.
pub fn random_invertible_monic<R: Rng>(spec: FieldSpec, d: usize, rng: &mut R) -> Polynomial {
    let mut c: Vec<FieldElement> = (0..d).map(|_| random_element(spec, rng)).collect();
    c[0] = random_nonzero(spec, rng);
    c.push(spec.one());
    Polynomial::new(spec, c).unwrap()
}

/// Monic of degree `d` whose `x^(d-1)` coefficient is `-trace`.
pub fn random_with_trace<R: Rng>(
    spec: FieldSpec,
    d: usize,
    trace: &FieldElement,
    rng: &mut R,
) -> Polynomial {
    let mut c: Vec<FieldElement> = (0..d).map(|_| random_element(spec, rng)).collect();
    c[d - 1] = -trace;
    c.push(spec.one());
    Polynomial::new(spec, c).unwrap()
}

pub fn random_invertible_matrix<R: Rng>(spec: FieldSpec, n: usize, rng: &mut R) -> Matrix {
    loop {
        let m = random_matrix(spec, n, n, rng);
        if !m.determinant().unwrap().is_zero() {
            return m;
        }
    }
}

/// `diag(0_k, a22)`.
pub fn pad(k: usize, a22: &Matrix) -> Matrix {
    let m = a22.rows();
    let mut a = Matrix::zeros(a22.spec(), k + m, k + m);
    a.set_block(k, k, a22);
    a
}

/// Every monic polynomial of degree `d` over GF(p), coefficients ascending
/// in base-p order.
pub fn all_monic(spec: FieldSpec, d: usize) -> Vec<Polynomial> {
    let p = spec.modulus().unwrap() as usize;
    let total = p.pow(d as u32);
    (0..total)
        .map(|mut idx| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push(spec.from_i64((idx % p) as i64));
                idx /= p;
            }
            c.push(spec.one());
            Polynomial::new(spec, c).unwrap()
        })
        .collect()
}

/// Every `rows x cols` matrix over GF(p).
pub fn all_matrices(spec: FieldSpec, rows: usize, cols: usize) -> Vec<Matrix> {
    let p = spec.modulus().unwrap() as usize;
    let cells = rows * cols;
    (0..p.pow(cells as u32))
        .map(|mut idx| {
            let mut digits = vec![0i64; cells];
            for d in digits.iter_mut().rev() {
                *d = (idx % p) as i64;
                idx /= p;
            }
            Matrix::from_fn(spec, rows, cols, |i, j| spec.from_i64(digits[i * cols + j]))
        })
        .collect()
}

/// Rank of the Krylov matrix `[v, Av, ..., A^(n-1) v]` maximized over the
/// whole space: `n` iff `A` is non-derogatory. Brute force over GF(p).
pub fn nonderogatory_oracle(a: &Matrix) -> bool {
    let n = a.rows();
    all_matrices(a.spec(), n, 1).iter().any(|v| {
        let mut cols = Vec::new();
        let mut w = v.col_vec(0);
        for _ in 0..n {
            let next = a.mul_vec(&w);
            cols.push(w);
            w = next;
        }
        Matrix::from_columns(a.spec(), n, &cols).rank() == n
    })
}

/// A random forge instance: `A = diag(0_k, C(p))` with `p(0) != 0`,
/// `1 <= k < n - k`, and a target with the trace of `A`.
pub fn random_forge_instance<R: Rng>(
    spec: FieldSpec,
    n: usize,
    rng: &mut R,
) -> (Matrix, usize, Polynomial) {
    let k = rng.gen_range(1..=(n - 1) / 2);
    let p = random_invertible_monic(spec, n - k, rng);
    let a = pad(k, &charpoly_forge_core::companion(&p).unwrap());
    let q = random_with_trace(spec, n, &a.trace().unwrap(), rng);
    (a, k, q)
}
