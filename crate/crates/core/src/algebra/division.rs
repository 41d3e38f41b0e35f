//! Exact division by leading-term elimination.

use num_traits::One;

use super::monomial::Monomial;
use super::poly::MultiPoly;
use super::ratfunc::RatFunc;
use super::AlgebraError;

/// Coefficient ring used when deciding divisibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffField {
    /// Plain polynomials over ℚ in all variables.
    Rationals,
    /// Polynomials in `y` whose coefficients are rational functions of `x`.
    RationalFunctionsInX,
}

/// Quotient `num / den` with `den` free of `y`. Over [`CoeffField::Rationals`]
/// the denominator is always one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub num: MultiPoly,
    pub den: MultiPoly,
}

impl Quotient {
    /// Checks `quotient · divisor = dividend` by cross-multiplication.
    pub fn verify(&self, dividend: &MultiPoly, divisor: &MultiPoly) -> bool {
        &self.num * divisor == &self.den * dividend
    }

    /// Coefficient of the y-monomial `ym` as a rational function of `x`.
    pub fn y_coefficient(&self, ym: &Monomial) -> RatFunc {
        RatFunc::new(self.num.y_coefficient(ym), self.den.clone())
            .expect("quotient denominator is nonzero and y-free")
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.as_constant().is_some_and(|c| c.is_one())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Division {
    Exact(Quotient),
    /// The elimination got stuck; `remainder` is the (scaled) remainder at
    /// that point and is nonzero.
    NotDivisible {
        remainder: MultiPoly,
    },
}

impl Division {
    pub fn quotient(&self) -> Option<&Quotient> {
        match self {
            Division::Exact(q) => Some(q),
            Division::NotDivisible { .. } => None,
        }
    }
}

/// Decides whether `den` divides `num` over the chosen coefficient ring and
/// returns the (unique) quotient when it does.
pub fn exact_divide(
    num: &MultiPoly,
    den: &MultiPoly,
    field: CoeffField,
) -> Result<Division, AlgebraError> {
    if den.is_zero() {
        return Err(AlgebraError::DivisionByZero);
    }
    if num.n() != den.n() {
        return Err(AlgebraError::DimensionMismatch {
            left: num.n(),
            right: den.n(),
        });
    }
    Ok(match field {
        CoeffField::Rationals => match divide_over_q(num, den) {
            Ok(q) => Division::Exact(Quotient {
                num: q,
                den: MultiPoly::one(num.n()),
            }),
            Err(remainder) => Division::NotDivisible { remainder },
        },
        CoeffField::RationalFunctionsInX => divide_over_rational_functions(num, den),
    })
}

/// Division over ℚ in the full monomial order. On failure returns the
/// remainder reached when the leading term stops being divisible.
pub(crate) fn divide_over_q(num: &MultiPoly, den: &MultiPoly) -> Result<MultiPoly, MultiPoly> {
    let n = num.n();
    let (lead_m, lead_c) = den.leading_term().expect("nonzero divisor");
    let (lead_m, lead_c) = (lead_m.clone(), lead_c.clone());
    let mut quotient = MultiPoly::zero(n);
    let mut rem = num.clone();
    while let Some((m, c)) = rem.leading_term() {
        let Some(shift) = m.div(&lead_m) else {
            return Err(rem);
        };
        let factor = c / &lead_c;
        rem = rem - den.mul_term(&shift, &factor);
        quotient.add_term(shift, factor);
    }
    Ok(quotient)
}

/// Fraction-free elimination on y-leading terms with x-polynomial
/// coefficients. Invariant: `scale · num = acc · den + rem`, with `scale`
/// free of `y`.
fn divide_over_rational_functions(num: &MultiPoly, den: &MultiPoly) -> Division {
    let n = num.n();
    let den_by_y = den.split_by_y();
    let (den_lead_y, den_lead_c) = den_by_y
        .iter()
        .next_back()
        .map(|(m, c)| (m.clone(), c.clone()))
        .expect("nonzero divisor");

    let mut scale = MultiPoly::one(n);
    let mut acc = MultiPoly::zero(n);
    let mut rem = num.clone();
    while let Some((lead, _)) = rem.leading_term() {
        let rem_lead_y = lead.y_part();
        let Some(shift) = rem_lead_y.div(&den_lead_y) else {
            return Division::NotDivisible { remainder: rem };
        };
        let rem_lead_c = rem.y_coefficient(&rem_lead_y);
        let shifted = |p: &MultiPoly| p.mul_term(&shift, &num_rational::BigRational::one());
        match divide_over_q(&rem_lead_c, &den_lead_c) {
            Ok(t) => {
                let t = shifted(&t);
                rem = rem - &t * den;
                acc = acc + t;
            }
            Err(_) => {
                let t = shifted(&rem_lead_c);
                rem = &den_lead_c * &rem - &t * den;
                acc = &den_lead_c * &acc + t;
                scale = &den_lead_c * &scale;
            }
        }
    }
    Division::Exact(reduce_quotient(acc, scale))
}

/// Cancels the common denominator when it divides the numerator outright,
/// and otherwise makes it monic.
fn reduce_quotient(num: MultiPoly, den: MultiPoly) -> Quotient {
    if let Ok(q) = divide_over_q(&num, &den) {
        return Quotient {
            num: q,
            den: MultiPoly::one(den.n()),
        };
    }
    let lead = den.leading_term().expect("nonzero").1.clone();
    let inv = num_rational::BigRational::one() / lead;
    Quotient {
        num: num.scale(&inv),
        den: den.scale(&inv),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse;
    use crate::algebra::rational::rat;

    fn p(s: &str) -> MultiPoly {
        parse(s, 2).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let d = exact_divide(&p("y1^2 - y2^2"), &p("y1 - y2"), CoeffField::Rationals).unwrap();
        let q = d.quotient().unwrap();
        assert_eq!(q.num, p("y1 + y2"));
        assert!(q.is_polynomial());
    }

    #[test]
    fn conformal_quotient_over_rational_functions() {
        // A_0 = y1·A0(y), A = (1+x1)·A0(y)  ⇒  A_0 / A = y1/(1+x1)
        let base = p("y1^3 + y1*y2^2 + y2^3");
        let num = &p("y1") * &base;
        let den = &p("1 + x1") * &base;
        let d = exact_divide(&num, &den, CoeffField::RationalFunctionsInX).unwrap();
        let q = d.quotient().unwrap();
        assert!(q.verify(&num, &den));
        assert_eq!(q.num, p("y1"));
        assert_eq!(q.den, p("x1 + 1"));
        // over plain rationals the same division fails
        let d = exact_divide(&num, &den, CoeffField::Rationals).unwrap();
        assert!(d.quotient().is_none());
    }

    #[test]
    fn leading_term_elimination_gets_stuck() {
        let d = exact_divide(
            &p("y1^4"),
            &p("(1+x1)*y1^3 + y1*y2^2 + y2^3"),
            CoeffField::RationalFunctionsInX,
        )
        .unwrap();
        match d {
            Division::NotDivisible { remainder } => {
                assert_eq!(remainder, p("-y1^2*y2^2 - y1*y2^3"))
            }
            other => panic!("expected NotDivisible, got {other:?}"),
        }
    }

    #[test]
    fn zero_is_divisible() {
        let d = exact_divide(
            &MultiPoly::zero(2),
            &p("y1"),
            CoeffField::RationalFunctionsInX,
        )
        .unwrap();
        assert!(d.quotient().unwrap().num.is_zero());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(
            exact_divide(&p("y1"), &MultiPoly::zero(2), CoeffField::Rationals),
            Err(AlgebraError::DivisionByZero)
        );
    }

    #[test]
    fn rational_scalar_division() {
        let d = exact_divide(&p("x1*y1"), &p("2*x1"), CoeffField::Rationals).unwrap();
        assert_eq!(d.quotient().unwrap().num, p("y1").scale(&rat(1, 2)));
    }

    #[test]
    fn monic_denominator_when_not_cancelling() {
        let num = &p("x2*y1") * &p("y2");
        let den = &p("2*x1 + 2") * &p("y2");
        let d = exact_divide(&num, &den, CoeffField::RationalFunctionsInX).unwrap();
        let q = d.quotient().unwrap();
        assert_eq!(q.den, p("x1 + 1"));
        assert_eq!(q.num, p("1/2*x2*y1"));
    }
}
