use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::poly::MultiPoly;
use super::rational::{format_rational, Rational};
use super::AlgebraError;

/// Which variable block a derivative is taken in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    X,
    Y,
}

/// A finite sum `Σ poly · A^(k/m) · β^s` over two fixed reference
/// polynomials `A` and `β`.
///
/// Exponents of `A` are stored as numerators over the fixed root order `m`;
/// exponents of `β` are integers. Terms sharing an exponent pair are merged
/// and zero terms are dropped, so the representation is canonical for a
/// given `(m, A, β)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerExpr {
    m: u32,
    a_ref: MultiPoly,
    beta_ref: MultiPoly,
    terms: BTreeMap<(i64, i64), MultiPoly>,
}

/// Outcome of clearing a power-product prefactor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalized {
    Polynomial(MultiPoly),
    /// Some term kept a fractional or negative exponent.
    NotPolynomial {
        a_exp: Rational,
        b_exp: i64,
    },
}

impl PowerExpr {
    pub fn zero(m: u32, a_ref: MultiPoly, beta_ref: MultiPoly) -> Self {
        assert!(m >= 1, "root order must be positive");
        assert_eq!(a_ref.n(), beta_ref.n(), "dimension mismatch");
        PowerExpr {
            m,
            a_ref,
            beta_ref,
            terms: BTreeMap::new(),
        }
    }

    /// `poly · A^a_exp · β^b_exp`.
    pub fn single(
        m: u32,
        a_ref: MultiPoly,
        beta_ref: MultiPoly,
        poly: MultiPoly,
        a_exp: &Rational,
        b_exp: i64,
    ) -> Result<Self, AlgebraError> {
        let mut e = Self::zero(m, a_ref, beta_ref);
        let k = e.numerator_of(a_exp)?;
        e.push(poly, k, b_exp);
        Ok(e)
    }

    /// A polynomial viewed as an expression with exponents `(0, 0)`.
    pub fn from_poly(m: u32, a_ref: MultiPoly, beta_ref: MultiPoly, poly: MultiPoly) -> Self {
        let mut e = Self::zero(m, a_ref, beta_ref);
        e.push(poly, 0, 0);
        e
    }

    pub fn root_order(&self) -> u32 {
        self.m
    }

    pub fn reference_a(&self) -> &MultiPoly {
        &self.a_ref
    }

    pub fn reference_beta(&self) -> &MultiPoly {
        &self.beta_ref
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(poly, A-exponent, β-exponent)`.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiPoly, Rational, i64)> {
        let m = i64::from(self.m);
        self.terms
            .iter()
            .map(move |(&(k, s), p)| (p, Rational::new(BigInt::from(k), BigInt::from(m)), s))
    }

    fn numerator_of(&self, a_exp: &Rational) -> Result<i64, AlgebraError> {
        let scaled = a_exp * Rational::from_integer(BigInt::from(self.m));
        if !scaled.is_integer() {
            return Err(AlgebraError::ExponentDenominator {
                exponent: format_rational(a_exp),
                m: self.m,
            });
        }
        i64::try_from(scaled.to_integer()).map_err(|_| AlgebraError::ExponentDenominator {
            exponent: format_rational(a_exp),
            m: self.m,
        })
    }

    fn push(&mut self, poly: MultiPoly, k: i64, s: i64) {
        if poly.is_zero() {
            return;
        }
        match self.terms.remove(&(k, s)) {
            Some(existing) => {
                let merged = existing + poly;
                if !merged.is_zero() {
                    self.terms.insert((k, s), merged);
                }
            }
            None => {
                self.terms.insert((k, s), poly);
            }
        }
    }

    fn same_frame(&self, other: &PowerExpr) -> bool {
        self.m == other.m && self.a_ref == other.a_ref && self.beta_ref == other.beta_ref
    }

    fn empty_like(&self) -> PowerExpr {
        PowerExpr {
            m: self.m,
            a_ref: self.a_ref.clone(),
            beta_ref: self.beta_ref.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn add(&self, other: &PowerExpr) -> PowerExpr {
        assert!(
            self.same_frame(other),
            "power expressions over different references"
        );
        let mut out = self.clone();
        for (&(k, s), p) in &other.terms {
            out.push(p.clone(), k, s);
        }
        out
    }

    pub fn sub(&self, other: &PowerExpr) -> PowerExpr {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }

    pub fn scale(&self, c: &Rational) -> PowerExpr {
        let mut out = self.empty_like();
        for (&(k, s), p) in &self.terms {
            out.push(p.scale(c), k, s);
        }
        out
    }

    pub fn mul_poly(&self, q: &MultiPoly) -> PowerExpr {
        let mut out = self.empty_like();
        for (&(k, s), p) in &self.terms {
            out.push(p * q, k, s);
        }
        out
    }

    /// Multiplies by `A^a_exp · β^b_exp`.
    pub fn mul_power(&self, a_exp: &Rational, b_exp: i64) -> Result<PowerExpr, AlgebraError> {
        let dk = self.numerator_of(a_exp)?;
        let mut out = self.empty_like();
        for (&(k, s), p) in &self.terms {
            out.push(p.clone(), k + dk, s + b_exp);
        }
        Ok(out)
    }

    /// Partial derivative by the product and chain rules:
    /// `∂(p·A^r·β^s) = ∂p·A^r·β^s + r·p·∂A·A^(r−1)·β^s + s·p·∂β·A^r·β^(s−1)`.
    pub fn diff(&self, wrt: Block, i: usize) -> Result<PowerExpr, AlgebraError> {
        let n = self.a_ref.n();
        if i >= n {
            return Err(AlgebraError::IndexOutOfRange { index: i, n });
        }
        let d = |p: &MultiPoly| match wrt {
            Block::X => p.partial_x(i),
            Block::Y => p.partial_y(i),
        };
        let da = d(&self.a_ref);
        let db = d(&self.beta_ref);
        let m = i64::from(self.m);
        let mut out = self.empty_like();
        for (&(k, s), p) in &self.terms {
            out.push(d(p), k, s);
            if k != 0 && !da.is_zero() {
                let r = Rational::new(BigInt::from(k), BigInt::from(m));
                out.push((p * &da).scale(&r), k - m, s);
            }
            if s != 0 && !db.is_zero() {
                out.push((p * &db).scale_int(s), k, s - 1);
            }
        }
        Ok(out)
    }

    /// Multiplies by `A^clear_a · β^clear_b` and expands into a single
    /// polynomial when every resulting exponent is a nonnegative integer.
    pub fn normalize(&self, clear_a: &Rational, clear_b: i64) -> Result<Normalized, AlgebraError> {
        let shifted = self.mul_power(clear_a, clear_b)?;
        let m = i64::from(self.m);
        for &(k, s) in shifted.terms.keys() {
            if k < 0 || k % m != 0 || s < 0 {
                return Ok(Normalized::NotPolynomial {
                    a_exp: Rational::new(BigInt::from(k), BigInt::from(m)),
                    b_exp: s,
                });
            }
        }
        let mut a_powers: BTreeMap<i64, MultiPoly> = BTreeMap::new();
        let mut b_powers: BTreeMap<i64, MultiPoly> = BTreeMap::new();
        let mut total = MultiPoly::zero(self.a_ref.n());
        for (&(k, s), p) in &shifted.terms {
            let ak = a_powers
                .entry(k / m)
                .or_insert_with(|| self.a_ref.pow((k / m) as u32));
            let term = p * ak;
            let bs = b_powers
                .entry(s)
                .or_insert_with(|| self.beta_ref.pow(s as u32));
            total = total + &term * bs;
        }
        Ok(Normalized::Polynomial(total))
    }

    /// Floating-point value; `A` and `β` should be positive at the point when
    /// fractional or negative powers occur.
    pub fn evaluate_f64(&self, x: &[f64], y: &[f64]) -> f64 {
        let a = self.a_ref.evaluate_f64(x, y);
        let b = self.beta_ref.evaluate_f64(x, y);
        let m = f64::from(self.m);
        self.terms
            .iter()
            .map(|(&(k, s), p)| p.evaluate_f64(x, y) * a.powf(k as f64 / m) * b.powi(s as i32))
            .sum()
    }
}

impl fmt::Display for PowerExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (p, r, s)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({p})")?;
            if !r.is_zero() {
                if r.is_integer() && !r.is_negative() {
                    write!(f, "*A^{}", r.numer())?;
                } else {
                    write!(f, "*A^({})", format_rational(&r))?;
                }
            }
            if s != 0 {
                if s > 0 {
                    write!(f, "*beta^{s}")?;
                } else {
                    write!(f, "*beta^({s})")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse;
    use crate::algebra::rational::{int, rat};

    fn p(s: &str) -> MultiPoly {
        parse(s, 2).unwrap()
    }

    #[test]
    fn constant_references_have_no_x_derivative() {
        let e = PowerExpr::single(
            3,
            p("y1^3 + y1*y2^2 + y2^3"),
            p("y1"),
            MultiPoly::one(2),
            &rat(4, 3),
            -2,
        )
        .unwrap();
        assert!(e.diff(Block::X, 0).unwrap().is_zero());
        assert!(e.diff(Block::X, 2).is_err());
    }

    #[test]
    fn pure_polynomial_reduces_to_partial() {
        let a = p("(1+x1)*y1^3 + y1*y2^2 + y2^3");
        let e = PowerExpr::from_poly(3, a.clone(), p("y1"), a.clone());
        let d = e.diff(Block::Y, 1).unwrap();
        assert_eq!(
            d,
            PowerExpr::from_poly(3, a.clone(), p("y1"), a.partial_y(1))
        );
    }

    #[test]
    fn chain_rule_with_fractional_power() {
        // A^{4/3} y1^{-2}, β = y1, m = 3:
        // ∂/∂y1 = (4/3) A^{1/3} A_1 y1^{-2} - 2 A^{4/3} y1^{-3}
        let a = p("y1^3 + y1*y2^2 + y2^3");
        let beta = p("y1");
        let e = PowerExpr::single(
            3,
            a.clone(),
            beta.clone(),
            MultiPoly::one(2),
            &rat(4, 3),
            -2,
        )
        .unwrap();
        let d = e.diff(Block::Y, 0).unwrap();
        let expected = PowerExpr::single(
            3,
            a.clone(),
            beta.clone(),
            a.partial_y(0).scale(&rat(4, 3)),
            &rat(1, 3),
            -2,
        )
        .unwrap()
        .add(
            &PowerExpr::single(3, a, beta, MultiPoly::constant(2, int(-2)), &rat(4, 3), -3)
                .unwrap(),
        );
        assert_eq!(d, expected);

        // numeric check against a central difference at (y1, y2) = (1.3, 0.7)
        let x = [0.0, 0.0];
        let h = 1e-5;
        let fd =
            (e.evaluate_f64(&x, &[1.3 + h, 0.7]) - e.evaluate_f64(&x, &[1.3 - h, 0.7])) / (2.0 * h);
        let exact = d.evaluate_f64(&x, &[1.3, 0.7]);
        assert!(
            (fd - exact).abs() <= 1e-7 * exact.abs().max(1.0),
            "{fd} vs {exact}"
        );
    }

    #[test]
    fn normalization() {
        let a = p("y1^3 + y2^3");
        let beta = p("y1 + x1*y2");
        let body = p("x2*y1 - 3");
        let e =
            PowerExpr::single(3, a.clone(), beta.clone(), body.clone(), &rat(-2, 3), -4).unwrap();
        assert_eq!(
            e.normalize(&rat(2, 3), 4).unwrap(),
            Normalized::Polynomial(body.clone())
        );
        assert_eq!(
            e.normalize(&rat(5, 3), 5).unwrap(),
            Normalized::Polynomial(&(&body * &a) * &beta)
        );
        let zero = PowerExpr::zero(3, a.clone(), beta.clone());
        assert_eq!(
            zero.normalize(&rat(2, 3), 4).unwrap(),
            Normalized::Polynomial(MultiPoly::zero(2))
        );
        assert!(matches!(
            e.normalize(&rat(1, 1), 4).unwrap(),
            Normalized::NotPolynomial { .. }
        ));
        assert!(e.normalize(&rat(1, 2), 4).is_err());
    }

    #[test]
    fn merges_and_drops_terms() {
        let a = p("y1^4");
        let beta = p("y2");
        let e = PowerExpr::single(4, a.clone(), beta.clone(), p("y1"), &rat(1, 2), 1).unwrap();
        let f = PowerExpr::single(4, a, beta, p("-y1"), &rat(2, 4), 1).unwrap();
        assert!(e.add(&f).is_zero());
        assert_eq!(e.add(&e).len(), 1);
    }

    #[test]
    fn exponent_denominator_must_divide_m() {
        let r = PowerExpr::single(3, p("y1^3"), p("y1"), MultiPoly::one(2), &rat(1, 2), 0);
        assert!(matches!(r, Err(AlgebraError::ExponentDenominator { .. })));
    }
}
