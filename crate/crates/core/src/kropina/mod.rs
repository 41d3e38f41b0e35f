//! The Kropina change `F̄ = F²/β` and its flatness checks.

mod brackets;
mod instance;
mod numeric;
mod residual;
mod theorems;
mod theta;

pub use brackets::{
    bracket_identity_holds, condition_brackets, contraction_probes, hamel_bracket, probe_constants,
    Brackets, ProbeConstants,
};
pub use instance::KropinaInstance;
pub use numeric::{
    numeric_crosscheck, sample_admissible_points, step_halving_ratio, ComponentComparison,
    CrosscheckReport, DEFAULT_STEP,
};
pub use residual::{
    check_dually_flat, check_projectively_flat, dually_flat_residual,
    dually_flat_residual_expanded, dually_flat_residuals, hamel_residual, hamel_residual_expanded,
    hamel_residuals, kropina_f, kropina_l, residuals_by_chain_rule, ResidualKind,
};
pub use theorems::{check_prop31, check_theorem1, LOCALLY_MINKOWSKI_UNPROVEN};
pub use theta::{check_theta_condition, extract_theta, ThetaExtraction, ThetaForm};

use crate::algebra::AlgebraError;
use crate::finsler::FinslerError;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum KropinaError {
    #[error(transparent)]
    Finsler(#[from] FinslerError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("characterization checks require m > 2 (got m = {m})")]
    RootOrderTooSmall { m: u32 },
    #[error("internal inconsistency: {0}")]
    ImplementationFault(String),
    #[error("sample point is not admissible: {0}")]
    NotAdmissible(String),
    #[error("finite-difference step must be positive and finite, got {0}")]
    BadStep(f64),
}
