//! Exact polynomial algebra over the split variable blocks `x1..xn`, `y1..yn`.

pub mod division;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod power_expr;
pub mod ratfunc;
pub mod rational;

pub use division::{exact_divide, CoeffField, Division, Quotient};
pub use monomial::Monomial;
pub use parse::{parse, ParseError, ParseErrorKind};
pub use poly::{Homogeneity, MultiPoly};
pub use power_expr::{Block, Normalized, PowerExpr};
pub use ratfunc::RatFunc;
pub use rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("variable index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("expected a polynomial free of y")]
    DependsOnY,
    #[error("exponent {exponent} of A is not a multiple of 1/{m}")]
    ExponentDenominator { exponent: String, m: u32 },
}
