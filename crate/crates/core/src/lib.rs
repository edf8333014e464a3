//! Exact linear algebra over Q and GF(p) for prescribing the characteristic
//! polynomial of a square-zero perturbation.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod boundary;
pub mod canon;
pub mod decompose;
pub mod error;
pub mod forge;
pub mod linalg;

pub use algebra::{companion, FieldElement, FieldSpec, Polynomial};
pub use boundary::{
    check_quartic_counterexample, normal_form_n, search_equal_split, EqualSplitProblem,
};
pub use canon::{frobenius_blocks, invariant_factors};
pub use decompose::{decompose, DecompositionCertificate, DecompositionKind};
pub use error::{Error, Result};
pub use forge::{forge, forge_k0, ForgeCertificate, ForgeProblem};
pub use linalg::{charpoly, minpoly, Matrix, SimilarityTransform};
