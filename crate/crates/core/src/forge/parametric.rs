//! The parametric square-zero family and its selected parameters.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::algebra::{FieldElement, FieldSpec};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Parameters `a_{i,s}` indexed by `1 <= i <= k`, `k+1 <= s <= n-k+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForgeParameters {
    spec: FieldSpec,
    n: usize,
    k: usize,
    values: BTreeMap<(usize, usize), FieldElement>,
}

fn check_shape(n: usize, k: usize) -> Result<()> {
    if k == 0 || k >= n - k.min(n) {
        return Err(Error::BadShape);
    }
    Ok(())
}

fn domain(n: usize, k: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=k).flat_map(move |i| (k + 1..=n - k + 1).map(move |s| (i, s)))
}

impl ForgeParameters {
    /// All parameters zero.
    pub fn zero(spec: FieldSpec, n: usize, k: usize) -> Result<Self> {
        check_shape(n, k)?;
        let values = domain(n, k).map(|idx| (idx, spec.zero())).collect();
        Ok(ForgeParameters { spec, n, k, values })
    }

    /// Requires the keys to be exactly the index domain.
    pub fn from_map(
        spec: FieldSpec,
        n: usize,
        k: usize,
        values: BTreeMap<(usize, usize), FieldElement>,
    ) -> Result<Self> {
        check_shape(n, k)?;
        if values.len() != (n - 2 * k + 1) * k || !domain(n, k).all(|idx| values.contains_key(&idx))
        {
            return Err(Error::IndexDomainMismatch);
        }
        if values.values().any(|v| v.spec() != spec) {
            return Err(Error::FieldMismatch);
        }
        Ok(ForgeParameters { spec, n, k, values })
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, s: usize) -> Option<&FieldElement> {
        self.values.get(&(i, s))
    }

    pub fn set(&mut self, i: usize, s: usize, v: FieldElement) -> Result<()> {
        if v.spec() != self.spec {
            return Err(Error::FieldMismatch);
        }
        match self.values.get_mut(&(i, s)) {
            Some(slot) => {
                *slot = v;
                Ok(())
            }
            None => Err(Error::IndexDomainMismatch),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &FieldElement)> {
        self.values.iter()
    }
}

/// `N = sum_{i=1..k} (e_i - e_{n-i+1}) r_i^T` (1-based), where `r_i` holds
/// `-a_{i,n-k+1}` at column `k`, `-a_{i,s}` at columns `s = k+1..n-k+1`, and
/// `-1` at columns `i` and `n-i+1` for `i < k`.
///
/// Every `r_j` vanishes on every `e_i - e_{n-i+1}`, so `N^2 = 0`.
pub fn build_parametric_n(n: usize, k: usize, params: &ForgeParameters) -> Result<Matrix> {
    check_shape(n, k)?;
    if params.n != n || params.k != k {
        return Err(Error::IndexDomainMismatch);
    }
    let spec = params.spec;
    let mut m = Matrix::zeros(spec, n, n);
    for i in 1..=k {
        let mut row = alloc::vec![spec.zero(); n];
        row[k - 1] = -params.values[&(i, n - k + 1)].clone();
        for s in k + 1..=n - k + 1 {
            row[s - 1] = -params.values[&(i, s)].clone();
        }
        if i < k {
            row[i - 1] = -spec.one();
            row[n - i] = -spec.one();
        }
        for (c, v) in row.into_iter().enumerate() {
            m.set(n - i, c, -&v);
            m.set(i - 1, c, v);
        }
    }
    Ok(m)
}

/// A parameter that is solved for, with the lowest degree of `x` at which it
/// enters the characteristic polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SelectedParameter {
    pub i: usize,
    pub s: usize,
    pub degree: usize,
}

/// `(i, k+1), (i, k+2)` for `i < k`, then `(k, s)` for `s = k+1..n-k+1`:
/// `n - 1` parameters whose degrees `n + k - 2i - s + 1` are `n-2, ..., 0`.
pub fn selected_parameters(n: usize, k: usize) -> Result<Vec<SelectedParameter>> {
    check_shape(n, k)?;
    let degree = |i: usize, s: usize| n + k + 1 - 2 * i - s;
    let mut out = Vec::with_capacity(n - 1);
    for i in 1..k {
        for s in [k + 1, k + 2] {
            out.push(SelectedParameter {
                i,
                s,
                degree: degree(i, s),
            });
        }
    }
    for s in k + 1..=n - k + 1 {
        out.push(SelectedParameter {
            i: k,
            s,
            degree: degree(k, s),
        });
    }
    Ok(out)
}
