use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::rational::{to_f64, Rational};
use super::AlgebraError;

/// Sparse multivariate polynomial with exact rational coefficients over the
/// variables `x1..xn`, `y1..yn`.
///
/// Terms are kept in a `BTreeMap` keyed by [`Monomial`], so iteration runs in
/// ascending monomial order and the leading term is the last entry. Zero
/// coefficients are never stored, which makes structural equality the same
/// as polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

/// Result of asking for the common y-degree of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Degree(u32),
    Inhomogeneous,
}

impl MultiPoly {
    pub fn zero(n: usize) -> Self {
        MultiPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::monomial(n, Monomial::one(n), c)
    }

    pub fn monomial(n: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.n(), n, "monomial dimension mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { n, terms }
    }

    /// The variable `x_{i+1}`.
    pub fn x(n: usize, i: usize) -> Self {
        Self::monomial(n, Monomial::x_var(n, i), Rational::one())
    }

    /// The variable `y_{i+1}`.
    pub fn y(n: usize, i: usize) -> Self {
        Self::monomial(n, Monomial::y_var(n, i), Rational::one())
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = MultiPoly::zero(n);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
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

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_y_free(&self) -> bool {
        self.terms.keys().all(Monomial::is_y_free)
    }

    pub fn is_x_free(&self) -> bool {
        self.terms.keys().all(|m| m.x_degree() == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.x_degree() + m.y_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn y_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::y_degree).max().unwrap_or(0)
    }

    pub fn x_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::x_degree).max().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.n(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn add_scaled(&mut self, other: &MultiPoly, factor: &Rational) {
        assert_eq!(self.n, other.n, "dimension mismatch");
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * factor);
        }
    }

    pub fn scale(&self, factor: &Rational) -> MultiPoly {
        if factor.is_zero() {
            return MultiPoly::zero(self.n);
        }
        MultiPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    pub fn scale_int(&self, factor: i64) -> MultiPoly {
        self.scale(&Rational::from_integer(factor.into()))
    }

    /// Multiplies by the single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.n);
        }
        MultiPoly {
            n: self.n,
            terms: self.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut result = MultiPoly::one(self.n);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `∂/∂x_{i+1}`; panics when `i >= n`. See [`MultiPoly::d_dx`] for the
    /// checked form.
    pub fn partial_x(&self, i: usize) -> MultiPoly {
        assert!(i < self.n, "x index out of range");
        let mut out = MultiPoly::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.x_exponents()[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            *dm.x_exponent_mut(i) -= 1;
            out.add_term(dm, c * Rational::from_integer(e.into()));
        }
        out
    }

    /// `∂/∂y_{i+1}`; panics when `i >= n`.
    pub fn partial_y(&self, i: usize) -> MultiPoly {
        assert!(i < self.n, "y index out of range");
        let mut out = MultiPoly::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.y_exponents()[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            *dm.y_exponent_mut(i) -= 1;
            out.add_term(dm, c * Rational::from_integer(e.into()));
        }
        out
    }

    pub fn d_dx(&self, i: usize) -> Result<MultiPoly, AlgebraError> {
        if i >= self.n {
            return Err(AlgebraError::IndexOutOfRange {
                index: i,
                n: self.n,
            });
        }
        Ok(self.partial_x(i))
    }

    pub fn d_dy(&self, i: usize) -> Result<MultiPoly, AlgebraError> {
        if i >= self.n {
            return Err(AlgebraError::IndexOutOfRange {
                index: i,
                n: self.n,
            });
        }
        Ok(self.partial_y(i))
    }

    /// `Σ_i y^i ∂p/∂y^i`, i.e. every term scaled by its y-degree.
    pub fn euler_contract_y(&self) -> MultiPoly {
        let mut out = MultiPoly::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * Rational::from_integer(m.y_degree().into()));
        }
        out
    }

    /// `Σ_i v_i · y^i` style contraction: `Σ_i y^i · polys[i]`.
    pub fn contract_y(polys: &[MultiPoly]) -> MultiPoly {
        let n = polys.first().map(MultiPoly::n).unwrap_or(0);
        let mut out = MultiPoly::zero(n);
        for (i, p) in polys.iter().enumerate() {
            out = out + p.mul_term(&Monomial::y_var(n, i), &Rational::one());
        }
        out
    }

    pub fn homogeneous_y_degree(&self) -> Result<Homogeneity, AlgebraError> {
        let mut degrees = self.terms.keys().map(Monomial::y_degree);
        let first = degrees.next().ok_or(AlgebraError::ZeroPolynomial)?;
        if degrees.all(|d| d == first) {
            Ok(Homogeneity::Degree(first))
        } else {
            Ok(Homogeneity::Inhomogeneous)
        }
    }

    /// Groups terms by y-part: y-exponents → x-only coefficient polynomial.
    pub fn split_by_y(&self) -> BTreeMap<Monomial, MultiPoly> {
        let mut out: BTreeMap<Monomial, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.y_part())
                .or_insert_with(|| MultiPoly::zero(self.n))
                .add_term(m.x_part(), c.clone());
        }
        out
    }

    /// x-only coefficient of the y-monomial `ym` (whose x-part must be one).
    pub fn y_coefficient(&self, ym: &Monomial) -> MultiPoly {
        debug_assert_eq!(ym.x_degree(), 0);
        let mut out = MultiPoly::zero(self.n);
        for (m, c) in &self.terms {
            if m.y_exponents() == ym.y_exponents() {
                out.add_term(m.x_part(), c.clone());
            }
        }
        out
    }

    /// Exact value at `(x, y)`.
    pub fn evaluate(&self, x: &[Rational], y: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.n, "x point dimension mismatch");
        assert_eq!(y.len(), self.n, "y point dimension mismatch");
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in x
                .iter()
                .zip(m.x_exponents())
                .chain(y.iter().zip(m.y_exponents()))
            {
                if e > 0 {
                    t *= num_traits::pow(v.clone(), e as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Floating-point value at `(x, y)`; coefficients are rounded to `f64`.
    pub fn evaluate_f64(&self, x: &[f64], y: &[f64]) -> f64 {
        assert_eq!(x.len(), self.n);
        assert_eq!(y.len(), self.n);
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = to_f64(c);
                for (v, &e) in x
                    .iter()
                    .zip(m.x_exponents())
                    .chain(y.iter().zip(m.y_exponents()))
                {
                    t *= v.powi(e as i32);
                }
                t
            })
            .sum()
    }

    /// Substitutes `x` by the given values, leaving a polynomial in `y`.
    pub fn substitute_x(&self, x: &[Rational]) -> MultiPoly {
        let mut out = MultiPoly::zero(self.n);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in x.iter().zip(m.x_exponents()) {
                if e > 0 {
                    t *= num_traits::pow(v.clone(), e as usize);
                }
            }
            out.add_term(m.y_part(), t);
        }
        out
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(mut self, rhs: MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = MultiPoly::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
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
    fn arithmetic_examples() {
        assert!((&p("y1") + &p("-y1")).is_zero());
        assert_eq!(&p("y1 - y2") * &p("y1 + y2"), p("y1^2 - y2^2"));
        assert_eq!(p("1 + x1").pow(2), p("1 + 2*x1 + x1^2"));
        assert_eq!(p("y1").pow(0), MultiPoly::one(2));
    }

    #[test]
    fn derivative_examples() {
        let a = p("y1^3 + y1*y2^2 + y2^3");
        assert_eq!(p("(1+x1)*y1^3").d_dx(0).unwrap(), p("y1^3"));
        assert_eq!(a.d_dy(0).unwrap(), p("3*y1^2 + y2^2"));
        assert_eq!(a.d_dy(1).unwrap(), p("2*y1*y2 + 3*y2^2"));
        assert_eq!(
            a.d_dy(2),
            Err(AlgebraError::IndexOutOfRange { index: 2, n: 2 })
        );
        assert!(a.d_dx(5).is_err());
    }

    #[test]
    fn euler_examples() {
        let a = p("y1^3 + y1*y2^2 + y2^3");
        assert_eq!(a.euler_contract_y(), a.scale_int(3));
        assert_eq!(p("x1*y1").euler_contract_y(), p("x1*y1"));
        assert_eq!(p("y1^2 + y2^3").euler_contract_y(), p("2*y1^2 + 3*y2^3"));
    }

    #[test]
    fn evaluate_examples() {
        let a = p("y1^3 + y1*y2^2 + y2^3");
        assert_eq!(a.evaluate(&[int(0), int(0)], &[int(1), int(1)]), int(3));
        let b = p("(1+x1)*y1^3");
        assert_eq!(b.evaluate(&[int(1), int(0)], &[int(2), int(0)]), int(16));
        assert_eq!(
            MultiPoly::zero(2).evaluate(&[rat(1, 3), int(2)], &[int(5), int(-1)]),
            int(0)
        );
        assert!((b.evaluate_f64(&[1.0, 0.0], &[2.0, 0.0]) - 16.0).abs() < 1e-12);
    }

    #[test]
    fn homogeneity_examples() {
        assert_eq!(
            p("y1^3 + y1*y2^2").homogeneous_y_degree(),
            Ok(Homogeneity::Degree(3))
        );
        assert_eq!(
            p("(1+x1)*y1^3").homogeneous_y_degree(),
            Ok(Homogeneity::Degree(3))
        );
        assert_eq!(
            p("y1 + y2^2").homogeneous_y_degree(),
            Ok(Homogeneity::Inhomogeneous)
        );
        assert_eq!(
            MultiPoly::zero(2).homogeneous_y_degree(),
            Err(AlgebraError::ZeroPolynomial)
        );
    }

    #[test]
    fn leading_term_is_y_senior() {
        let a = p("x1^4 + y2 + x2*y1");
        let (m, _) = a.leading_term().unwrap();
        assert_eq!(m.y_exponents(), &[1, 0]);
        assert_eq!(m.x_exponents(), &[0, 1]);
    }
}
