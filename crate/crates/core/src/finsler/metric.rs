use std::fmt;

use crate::algebra::{Homogeneity, MultiPoly};

use super::irreducible::irreducibility_heuristic;
use super::FinslerError;

/// Evidence about irreducibility of `A`. Only a refutation is conclusive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    /// The caller asserted irreducibility and the heuristic found no factor.
    Asserted,
    /// The heuristic found no factor.
    HeuristicallyConsistent,
    /// A proper factor of `A` (exact division verified).
    ReducibleWitness(MultiPoly),
}

impl Irreducibility {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Irreducibility::ReducibleWitness(_))
    }
}

impl fmt::Display for Irreducibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Irreducibility::Asserted => f.write_str("asserted"),
            Irreducibility::HeuristicallyConsistent => f.write_str("heuristically consistent"),
            Irreducibility::ReducibleWitness(p) => write!(f, "reducible (factor {p})"),
        }
    }
}

/// An m-th root metric `F = A^(1/m)` with `A` y-homogeneous of degree `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MthRootMetric {
    n: usize,
    m: u32,
    a: MultiPoly,
    irreducibility: Irreducibility,
}

impl MthRootMetric {
    /// Validates `A` and runs the irreducibility heuristic.
    ///
    /// Root order 2 is accepted here (the PDE residuals make sense for it);
    /// the characterization checkers reject it.
    pub fn new(n: usize, m: u32, a: MultiPoly) -> Result<Self, FinslerError> {
        Self::build(n, m, a, false)
    }

    /// As [`MthRootMetric::new`], recording a caller assertion that `A` is
    /// irreducible. A factor found by the heuristic still overrides it.
    pub fn new_asserted_irreducible(n: usize, m: u32, a: MultiPoly) -> Result<Self, FinslerError> {
        Self::build(n, m, a, true)
    }

    fn build(n: usize, m: u32, a: MultiPoly, asserted: bool) -> Result<Self, FinslerError> {
        if n < 2 {
            return Err(FinslerError::DimensionTooSmall(n));
        }
        if m < 2 {
            return Err(FinslerError::RootOrderTooSmall(m));
        }
        if a.n() != n {
            return Err(FinslerError::DimensionMismatch {
                expected: n,
                found: a.n(),
            });
        }
        match a.homogeneous_y_degree() {
            Err(_) => return Err(FinslerError::ZeroMetric),
            Ok(Homogeneity::Degree(d)) if d == m => {}
            Ok(found) => return Err(FinslerError::NotHomogeneous { expected: m, found }),
        }
        let irreducibility = match irreducibility_heuristic(&a) {
            Some(factor) => Irreducibility::ReducibleWitness(factor),
            None if asserted => Irreducibility::Asserted,
            None => Irreducibility::HeuristicallyConsistent,
        };
        Ok(MthRootMetric {
            n,
            m,
            a,
            irreducibility,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn a(&self) -> &MultiPoly {
        &self.a
    }

    pub fn irreducibility(&self) -> &Irreducibility {
        &self.irreducibility
    }

    /// `true` iff every `A_{x^l}` vanishes, which makes the metric locally
    /// Minkowskian in this chart. `false` proves nothing.
    pub fn minkowski_sufficient(&self) -> bool {
        self.a.is_x_free()
    }
}

/// A 1-form `β = b_i(x) y^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    b: Vec<MultiPoly>,
}

impl OneForm {
    pub fn new(b: Vec<MultiPoly>) -> Result<Self, FinslerError> {
        let n = b.len();
        if b.iter().any(|p| p.n() != n) {
            return Err(FinslerError::DimensionMismatch {
                expected: n,
                found: b.iter().map(MultiPoly::n).find(|&k| k != n).unwrap_or(n),
            });
        }
        if b.iter().any(|p| !p.is_y_free()) {
            return Err(FinslerError::CoefficientDependsOnY);
        }
        if b.iter().all(MultiPoly::is_zero) {
            return Err(FinslerError::ZeroOneForm);
        }
        Ok(OneForm { b })
    }

    /// Reads the coefficients off a polynomial that must be y-linear.
    pub fn from_polynomial(beta: &MultiPoly) -> Result<Self, FinslerError> {
        match beta.homogeneous_y_degree() {
            Err(_) => return Err(FinslerError::ZeroOneForm),
            Ok(Homogeneity::Degree(1)) => {}
            Ok(found) => return Err(FinslerError::NotHomogeneous { expected: 1, found }),
        }
        let n = beta.n();
        let b = (0..n).map(|i| beta.partial_y(i)).collect();
        Self::new(b)
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn coefficients(&self) -> &[MultiPoly] {
        &self.b
    }

    pub fn to_polynomial(&self) -> MultiPoly {
        MultiPoly::contract_y(&self.b)
    }

    pub fn scale(&self, c: &crate::algebra::Rational) -> OneForm {
        OneForm {
            b: self.b.iter().map(|p| p.scale(c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse;

    fn p(s: &str) -> MultiPoly {
        parse(s, 2).unwrap()
    }

    #[test]
    fn metric_validation() {
        assert!(MthRootMetric::new(2, 3, p("y1^3 + y1*y2^2 + y2^3")).is_ok());
        assert_eq!(
            MthRootMetric::new(2, 3, MultiPoly::zero(2)),
            Err(FinslerError::ZeroMetric)
        );
        assert!(matches!(
            MthRootMetric::new(2, 3, p("y1^3 + y2^2")),
            Err(FinslerError::NotHomogeneous { .. })
        ));
        assert_eq!(
            MthRootMetric::new(1, 3, parse("y1^3", 1).unwrap()),
            Err(FinslerError::DimensionTooSmall(1))
        );
        assert_eq!(
            MthRootMetric::new(2, 1, p("y1")),
            Err(FinslerError::RootOrderTooSmall(1))
        );
    }

    #[test]
    fn assertion_is_overridden_by_a_factor() {
        let m = MthRootMetric::new_asserted_irreducible(2, 3, p("y1^3 + y1*y2^2 + y2^3")).unwrap();
        assert_eq!(m.irreducibility(), &Irreducibility::Asserted);
        let m = MthRootMetric::new_asserted_irreducible(2, 3, p("y1^3 + y2^3")).unwrap();
        assert!(m.irreducibility().is_refuted());
    }

    #[test]
    fn minkowski_sufficient_condition() {
        let m = |s: &str| {
            MthRootMetric::new(2, 3, p(s))
                .unwrap()
                .minkowski_sufficient()
        };
        assert!(m("y1^3 + y1*y2^2 + y2^3"));
        assert!(!m("(1+x1)*y1^3 + y1*y2^2 + y2^3"));
        assert!(!m("y1^3 + x2*y1*y2^2 + y2^3"));
    }

    #[test]
    fn one_form() {
        let b = OneForm::from_polynomial(&p("(1+x1)*y1")).unwrap();
        assert_eq!(b.coefficients(), &[p("1 + x1"), MultiPoly::zero(2)]);
        assert_eq!(b.to_polynomial(), p("y1 + x1*y1"));
        assert_eq!(
            OneForm::from_polynomial(&MultiPoly::zero(2)),
            Err(FinslerError::ZeroOneForm)
        );
        assert!(OneForm::from_polynomial(&p("y1^2")).is_err());
        assert!(OneForm::from_polynomial(&p("y1 + 1")).is_err());
        assert_eq!(
            OneForm::new(vec![p("y1"), p("1")]),
            Err(FinslerError::CoefficientDependsOnY)
        );
    }
}
