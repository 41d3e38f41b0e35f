//! The m-th root metric, its coefficient tensor and the quantities derived
//! from `A` and `β`.

pub mod derived;
pub mod identities;
pub mod irreducible;
pub mod matrix;
pub mod metric;
pub mod tensor;

pub use derived::{derive, DerivedQuantities};
pub use identities::{
    fundamental_tensor, verify_euler_identities, verify_inverse_identities,
    FundamentalTensorNormalized,
};
pub use irreducible::irreducibility_heuristic;
pub use metric::{Irreducibility, MthRootMetric, OneForm};
pub use tensor::SymmetricTensor;

use crate::algebra::{AlgebraError, Homogeneity};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FinslerError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("dimension n = {0} is too small (need n >= 2)")]
    DimensionTooSmall(usize),
    #[error("root order m = {0} is too small (need m >= 2)")]
    RootOrderTooSmall(u32),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("A is the zero polynomial")]
    ZeroMetric,
    #[error("the 1-form is zero")]
    ZeroOneForm,
    #[error("expected y-homogeneous degree {expected}, found {found:?}")]
    NotHomogeneous { expected: u32, found: Homogeneity },
    #[error("coefficients must not depend on y")]
    CoefficientDependsOnY,
    #[error("bad tensor index {0:?}")]
    BadTensorIndex(Vec<usize>),
}
