//! Extraction of the 1-form `θ` from `A_0 = c·θ·A` and the condition it
//! must satisfy.

use std::fmt;

use serde::Serialize;

use crate::algebra::rational::int;
use crate::algebra::{exact_divide, CoeffField, Division, Monomial, MultiPoly, RatFunc, Rational};
use crate::report::Verdict;

use super::{KropinaError, KropinaInstance};

/// `θ = θ_l(x) y^l`, stored both per coefficient and over a common
/// x-denominator as `θ = numerator / denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaForm {
    coefficients: Vec<RatFunc>,
    numerator: MultiPoly,
    denominator: MultiPoly,
}

impl ThetaForm {
    pub fn zero(n: usize) -> Self {
        ThetaForm {
            coefficients: vec![RatFunc::zero(n); n],
            numerator: MultiPoly::zero(n),
            denominator: MultiPoly::one(n),
        }
    }

    /// `numerator` must be y-linear and `denominator` a nonzero y-free
    /// polynomial.
    pub fn from_parts(numerator: MultiPoly, denominator: MultiPoly) -> Result<Self, KropinaError> {
        let n = numerator.n();
        let coefficients = (0..n)
            .map(|l| {
                RatFunc::new(
                    numerator.y_coefficient(&Monomial::y_var(n, l)),
                    denominator.clone(),
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        if MultiPoly::contract_y(&(0..n).map(|l| numerator.partial_y(l)).collect::<Vec<_>>())
            != numerator
        {
            return Err(KropinaError::ImplementationFault(
                "theta numerator is not y-linear".into(),
            ));
        }
        Ok(ThetaForm {
            coefficients,
            numerator,
            denominator,
        })
    }

    pub fn coefficients(&self) -> &[RatFunc] {
        &self.coefficients
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }
}

impl fmt::Display for ThetaForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(l, c)| format!("theta_{} = {c}", l + 1))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

impl Serialize for ThetaForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coefficients.iter().map(ToString::to_string).collect();
        v.serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThetaExtraction {
    Found(ThetaForm),
    /// `A` does not divide `A_0`; `remainder` is nonzero.
    NotDivisible {
        remainder: MultiPoly,
    },
    /// The quotient exists but is not y-linear.
    WrongDegree {
        quotient: MultiPoly,
    },
    Inconclusive {
        reason: String,
    },
}

impl ThetaExtraction {
    pub fn theta(&self) -> Option<&ThetaForm> {
        match self {
            ThetaExtraction::Found(t) => Some(t),
            _ => None,
        }
    }
}

impl fmt::Display for ThetaExtraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaExtraction::Found(t) => write!(f, "{t}"),
            ThetaExtraction::NotDivisible { remainder } => {
                write!(f, "not divisible (remainder {remainder})")
            }
            ThetaExtraction::WrongDegree { quotient } => {
                write!(f, "quotient {quotient} is not linear in y")
            }
            ThetaExtraction::Inconclusive { reason } => write!(f, "inconclusive: {reason}"),
        }
    }
}

/// Solves `A_0 = θ A` for `θ` over rational functions in `x`.
pub fn extract_theta(inst: &KropinaInstance) -> Result<ThetaExtraction, KropinaError> {
    extract_theta_scaled(inst, &int(1))
}

/// Solves `A_0 = scale · θ · A`.
pub(crate) fn extract_theta_scaled(
    inst: &KropinaInstance,
    scale: &Rational,
) -> Result<ThetaExtraction, KropinaError> {
    let n = inst.n();
    let a0 = &inst.derived().a_0;
    if a0.is_zero() {
        return Ok(ThetaExtraction::Found(ThetaForm::zero(n)));
    }
    if inst.metric().irreducibility().is_refuted() {
        return Ok(ThetaExtraction::Inconclusive {
            reason: format!("A is {}", inst.metric().irreducibility()),
        });
    }
    let divisor = inst.a().scale(scale);
    let q = match exact_divide(a0, &divisor, CoeffField::RationalFunctionsInX)? {
        Division::Exact(q) => q,
        Division::NotDivisible { remainder } => {
            return Ok(ThetaExtraction::NotDivisible { remainder })
        }
    };
    if !q.verify(a0, &divisor) {
        return Err(KropinaError::ImplementationFault(
            "theta quotient fails multiply-back".into(),
        ));
    }
    if q.num.homogeneous_y_degree()? != crate::algebra::Homogeneity::Degree(1) {
        return Ok(ThetaExtraction::WrongDegree { quotient: q.num });
    }
    Ok(ThetaExtraction::Found(ThetaForm::from_parts(q.num, q.den)?))
}

/// `A_x^l = (m A θ_l + 4 θ A_l) / (3m)` for every `l`, checked as
/// `3m·D·A_x^l = m A N_l + 4 N A_l` with `θ = N / D`.
pub fn check_theta_condition(inst: &KropinaInstance, theta: &ThetaForm) -> Verdict {
    let n = inst.n();
    let m = i64::from(inst.m());
    let d = inst.derived();
    let num = theta.numerator();
    let den = theta.denominator();
    Verdict::from_polynomials((0..n).map(|l| {
        let lhs = (den * &d.a_x[l]).scale_int(3 * m);
        let rhs = (inst.a() * &num.partial_y(l)).scale_int(m) + (num * &d.a_i[l]).scale_int(4);
        (format!("l={}", l + 1), lhs - rhs)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse;
    use crate::finsler::{MthRootMetric, OneForm};

    fn inst(a: &str) -> KropinaInstance {
        let metric = MthRootMetric::new(2, 3, parse(a, 2).unwrap()).unwrap();
        let beta = OneForm::from_polynomial(&parse("y1", 2).unwrap()).unwrap();
        KropinaInstance::new(metric, beta).unwrap()
    }

    #[test]
    fn conformal_theta() {
        let i = inst("(1+x1)*(y1^3 + y1*y2^2 + y2^3)");
        let t = extract_theta(&i).unwrap();
        let theta = t.theta().expect("divisible");
        let expected = RatFunc::new(MultiPoly::one(2), parse("1+x1", 2).unwrap()).unwrap();
        assert_eq!(theta.coefficients()[0], expected);
        assert!(theta.coefficients()[1].is_zero());
        let v = check_theta_condition(&i, theta);
        let w = &v.witnesses()[0];
        assert_eq!(w.label, "l=1");
        let lhs = parse("9*(1+x1)*(y1^3 + y1*y2^2 + y2^3)", 2).unwrap();
        let rhs = parse("(1+x1)*(15*y1^3 + 7*y1*y2^2 + 3*y2^3)", 2).unwrap();
        let scaled = w.polynomial.clone();
        // the witness is lhs − rhs up to the common-denominator normalisation
        let ratio = exact_divide(&(lhs - rhs), &scaled, CoeffField::RationalFunctionsInX).unwrap();
        assert!(ratio.quotient().unwrap().num.is_y_free());
    }

    #[test]
    fn perturbed_not_divisible() {
        let i = inst("(1+x1)*y1^3 + y1*y2^2 + y2^3");
        assert!(matches!(
            extract_theta(&i).unwrap(),
            ThetaExtraction::NotDivisible { .. }
        ));
    }

    #[test]
    fn minkowski_theta_is_zero() {
        let i = inst("y1^3 + y1*y2^2 + y2^3");
        let t = extract_theta(&i).unwrap();
        assert!(t.theta().unwrap().is_zero());
        assert!(check_theta_condition(&i, t.theta().unwrap()).holds());
    }
}
