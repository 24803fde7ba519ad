//! Exact arithmetic over prime fields and the rationals: scalars, sparse
//! multivariate polynomials, dense matrices with Gaussian elimination, and
//! the multimodular (CRT + rational reconstruction) path.

pub mod crt;
pub mod field;
pub mod matrix;
pub mod poly;

pub use crt::{crt_combine, rational_reconstruct};
pub use field::{Field, PrimeField, Rationals};
pub use matrix::{Echelon, Matrix};
pub use poly::DensePoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("{0} is not a supported prime modulus (odd prime below 2^31)")]
    InvalidModulus(u64),
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("duplicate modulus {0} in CRT input")]
    DuplicateModulus(u64),
    #[error("moduli are not coprime")]
    NotCoprime,
    #[error("reconstruction bound too large for modulus (need 2*bound^2 < modulus)")]
    ReconstructionBound,
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}
