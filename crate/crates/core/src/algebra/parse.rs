//! Text syntax for polynomials.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary ('*' unary)*
//! unary    := ('+' | '-') unary | power
//! power    := atom ('^' exponent)?
//! atom     := literal | variable | '(' expr ')'
//! literal  := digits ('/' digits)?
//! variable := 'x' digits | 'y' digits
//! exponent := digits | '(' digits ')'
//! ```
//!
//! Exponents must be nonnegative integer literals. Negative or fractional
//! exponents are reported as such, at the position where the exponent
//! starts. The printer emits the same syntax, so `parse(p.to_string())`
//! reproduces `p`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::poly::MultiPoly;
use super::rational::{format_rational, Rational};

const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    UnknownVariable(String),
    NegativeExponent,
    FractionalExponent,
    InvalidExponent,
    ExponentTooLarge,
    ZeroDenominator,
}

/// A syntax error at a zero-based character offset.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{kind} at column {}", .position + 1)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character '{c}'"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::UnknownVariable(v) => write!(f, "unknown variable '{v}'"),
            ParseErrorKind::NegativeExponent => write!(f, "negative exponent"),
            ParseErrorKind::FractionalExponent => write!(f, "fractional exponent"),
            ParseErrorKind::InvalidExponent => {
                write!(f, "exponent must be a nonnegative integer literal")
            }
            ParseErrorKind::ExponentTooLarge => write!(f, "exponent too large"),
            ParseErrorKind::ZeroDenominator => write!(f, "zero denominator"),
        }
    }
}

/// Parses `text` as a polynomial in `x1..xn`, `y1..yn`.
pub fn parse(text: &str, n: usize) -> Result<MultiPoly, ParseError> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
        n,
    };
    let p = parser.expr()?;
    parser.skip_ws();
    if let Some(c) = parser.peek() {
        return Err(parser.error(ParseErrorKind::UnexpectedChar(c)));
    }
    Ok(p)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    n: usize,
}

impl Parser {
    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            kind,
            position: self.pos,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_token(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek()
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        match self.peek_token() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(ParseErrorKind::UnexpectedChar(c))),
            None => Err(self.error(ParseErrorKind::UnexpectedEnd)),
        }
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek_token() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.unary()?;
        while self.peek_token() == Some('*') {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly, ParseError> {
        match self.peek_token() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.atom()?;
        if self.peek_token() == Some('^') {
            self.pos += 1;
            let e = self.exponent()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, ParseError> {
        match self.peek_token() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let value = self.literal()?;
                Ok(MultiPoly::constant(self.n, value))
            }
            Some(c) if c.is_ascii_alphabetic() => self.variable(),
            Some(c) => Err(self.error(ParseErrorKind::UnexpectedChar(c))),
            None => Err(self.error(ParseErrorKind::UnexpectedEnd)),
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.peek() {
                Some(c) => self.error(ParseErrorKind::UnexpectedChar(c)),
                None => self.error(ParseErrorKind::UnexpectedEnd),
            });
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn literal(&mut self) -> Result<Rational, ParseError> {
        let num = self.digits()?;
        if self.peek_token() == Some('/') {
            self.pos += 1;
            self.skip_ws();
            let den_pos = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                return Err(ParseError {
                    kind: ParseErrorKind::ZeroDenominator,
                    position: den_pos,
                });
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }

    fn variable(&mut self) -> Result<MultiPoly, ParseError> {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        let unknown = || ParseError {
            kind: ParseErrorKind::UnknownVariable(name.clone()),
            position: start,
        };
        let (block, index) = name.split_at(1);
        if index.is_empty() || !index.bytes().all(|b| b.is_ascii_digit()) || index.starts_with('0')
        {
            return Err(unknown());
        }
        let i: usize = index.parse().map_err(|_| unknown())?;
        if i == 0 || i > self.n {
            return Err(unknown());
        }
        match block {
            "x" => Ok(MultiPoly::x(self.n, i - 1)),
            "y" => Ok(MultiPoly::y(self.n, i - 1)),
            _ => Err(unknown()),
        }
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let fail = |kind| ParseError {
            kind,
            position: start,
        };
        let parenthesized = self.peek() == Some('(');
        if parenthesized {
            self.pos += 1;
        }
        let negative = match self.peek_token() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some(c) if c.is_ascii_digit() => false,
            _ => return Err(fail(ParseErrorKind::InvalidExponent)),
        };
        if !self.peek_token().is_some_and(|c| c.is_ascii_digit()) {
            return Err(fail(ParseErrorKind::InvalidExponent));
        }
        let value = self.literal()?;
        if parenthesized {
            self.expect(')')?;
        }
        if negative && !value.is_zero() {
            return Err(fail(ParseErrorKind::NegativeExponent));
        }
        if !value.is_integer() {
            return Err(fail(ParseErrorKind::FractionalExponent));
        }
        let v = value.to_integer();
        if v > BigInt::from(MAX_EXPONENT) {
            return Err(fail(ParseErrorKind::ExponentTooLarge));
        }
        Ok(u32::try_from(v).expect("bounded exponent"))
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    let vars = m
        .x_exponents()
        .iter()
        .enumerate()
        .map(|(i, &e)| ('x', i, e))
        .chain(
            m.y_exponents()
                .iter()
                .enumerate()
                .map(|(i, &e)| ('y', i, e)),
        );
    for (block, i, e) in vars {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        write!(f, "{block}{}", i + 1)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            if m.is_one() {
                f.write_str(&format_rational(&magnitude))?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{}*", format_rational(&magnitude))?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}
