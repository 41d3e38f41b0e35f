use std::fmt;

use num_traits::{One, Zero};

use super::division::divide_over_q;
use super::poly::MultiPoly;
use super::rational::Rational;
use super::AlgebraError;

/// Quotient of two x-only polynomials.
///
/// No gcd normalization is performed. Equality is decided by
/// cross-multiplication, so `x1/x1 == 1/1`.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if !num.is_y_free() || !den.is_y_free() {
            return Err(AlgebraError::DependsOnY);
        }
        Ok(RatFunc { num, den }.tidy())
    }

    pub fn from_poly(p: MultiPoly) -> Result<Self, AlgebraError> {
        let n = p.n();
        Self::new(p, MultiPoly::one(n))
    }

    pub fn zero(n: usize) -> Self {
        RatFunc {
            num: MultiPoly::zero(n),
            den: MultiPoly::one(n),
        }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cheap size reduction: cancel the denominator if it divides the
    /// numerator, otherwise scale so the denominator is monic.
    fn tidy(self) -> Self {
        let n = self.num.n();
        if self.num.is_zero() {
            return RatFunc::zero(n);
        }
        if let Ok(q) = divide_over_q(&self.num, &self.den) {
            return RatFunc {
                num: q,
                den: MultiPoly::one(n),
            };
        }
        let lead = self.den.leading_term().expect("nonzero").1.clone();
        if lead.is_one() {
            return self;
        }
        let inv = Rational::one() / lead;
        RatFunc {
            num: self.num.scale(&inv),
            den: self.den.scale(&inv),
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.den == other.den {
            return RatFunc {
                num: &self.num + &other.num,
                den: self.den.clone(),
            }
            .tidy();
        }
        RatFunc {
            num: &self.num * &other.den + &other.num * &self.den,
            den: &self.den * &other.den,
        }
        .tidy()
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
        .tidy()
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc, AlgebraError> {
        if other.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(RatFunc {
            num: &self.num * &other.den,
            den: &self.den * &other.num,
        }
        .tidy())
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.num.n());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Value at `x`; `None` where the denominator vanishes.
    pub fn evaluate(&self, x: &[Rational]) -> Option<Rational> {
        let zeros = vec![Rational::zero(); self.num.n()];
        let d = self.den.evaluate(x, &zeros);
        if d.is_zero() {
            return None;
        }
        Some(self.num.evaluate(x, &zeros) / d)
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFunc {}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den_is_one = self.den.as_constant().is_some_and(|c| c.is_one());
        if den_is_one {
            write!(f, "{}", self.num)
        } else if self.num.len() > 1 {
            write!(f, "({})/({})", self.num, self.den)
        } else {
            write!(f, "{}/({})", self.num, self.den)
        }
    }
}
