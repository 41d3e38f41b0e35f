use crate::algebra::MultiPoly;
use crate::finsler::{derive, DerivedQuantities, MthRootMetric, OneForm};

use super::KropinaError;

/// The Kropina change `F̄ = F²/β` of `F = A^(1/m)`, with the derived
/// quantities computed once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KropinaInstance {
    metric: MthRootMetric,
    beta: OneForm,
    derived: DerivedQuantities,
}

impl KropinaInstance {
    pub fn new(metric: MthRootMetric, beta: OneForm) -> Result<Self, KropinaError> {
        let derived = derive(&metric, &beta)?;
        Ok(KropinaInstance {
            metric,
            beta,
            derived,
        })
    }

    pub fn metric(&self) -> &MthRootMetric {
        &self.metric
    }

    pub fn one_form(&self) -> &OneForm {
        &self.beta
    }

    pub fn derived(&self) -> &DerivedQuantities {
        &self.derived
    }

    pub fn n(&self) -> usize {
        self.metric.n()
    }

    pub fn m(&self) -> u32 {
        self.metric.m()
    }

    pub fn a(&self) -> &MultiPoly {
        self.metric.a()
    }

    pub fn beta(&self) -> &MultiPoly {
        &self.derived.beta
    }

    pub(crate) fn check_index(&self, l: usize) -> Result<(), KropinaError> {
        if l >= self.n() {
            return Err(KropinaError::IndexOutOfRange {
                index: l,
                n: self.n(),
            });
        }
        Ok(())
    }

    /// The characterization checkers need `m > 2`.
    pub(crate) fn require_m_above_two(&self) -> Result<(), KropinaError> {
        if self.m() <= 2 {
            return Err(KropinaError::RootOrderTooSmall { m: self.m() });
        }
        Ok(())
    }
}
