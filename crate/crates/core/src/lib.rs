//! Exact symbolic checks for Kropina changes `F̄ = F²/β` of m-th root
//! Finsler metrics `F = A^(1/m)`.
//!
//! The crate is layered bottom-up:
//!
//! * [`algebra`]: sparse rational polynomials, rational functions in `x`,
//!   power products `A^(k/m)·β^s`, and the text syntax.
//! * [`finsler`]: symmetric coefficient tensors, the metric object, derived
//!   quantities and the Euler/inverse identities.
//! * [`kropina`]: dually-flat and projective-flatness residuals, the
//!   characterization checkers, θ-extraction and the numeric oracle.
//! * [`cli`]: instance files, reports and the batch front end.

pub mod algebra;
pub mod cli;
pub mod finsler;
pub mod kropina;
pub mod random;
pub mod report;
