use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{Homogeneity, Monomial, MultiPoly, Rational};

use super::FinslerError;

/// Symmetric rank-`m` coefficient tensor `a_{i1…im}(x)` stored by sorted
/// index tuples (zero-based), so symmetry holds by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricTensor {
    n: usize,
    m: u32,
    entries: BTreeMap<Vec<usize>, MultiPoly>,
}

/// `m! / Π c_i!` for the exponent vector `counts` (which sums to `m`).
pub fn multinomial(counts: &[u32]) -> BigInt {
    let m: u32 = counts.iter().sum();
    let fact = |k: u32| (1..=k).fold(BigInt::one(), |acc, v| acc * BigInt::from(v));
    counts.iter().fold(fact(m), |acc, &c| acc / fact(c))
}

fn counts_of(indices: &[usize], n: usize) -> Vec<u32> {
    let mut counts = vec![0u32; n];
    for &i in indices {
        counts[i] += 1;
    }
    counts
}

impl SymmetricTensor {
    pub fn new(n: usize, m: u32) -> Self {
        SymmetricTensor {
            n,
            m,
            entries: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> u32 {
        self.m
    }

    /// Sets the entry for any ordering of `indices`.
    pub fn set(&mut self, indices: &[usize], value: MultiPoly) -> Result<(), FinslerError> {
        if indices.len() != self.m as usize || indices.iter().any(|&i| i >= self.n) {
            return Err(FinslerError::BadTensorIndex(indices.to_vec()));
        }
        if value.n() != self.n {
            return Err(FinslerError::DimensionMismatch {
                expected: self.n,
                found: value.n(),
            });
        }
        if !value.is_y_free() {
            return Err(FinslerError::CoefficientDependsOnY);
        }
        let mut key = indices.to_vec();
        key.sort_unstable();
        if value.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, value);
        }
        Ok(())
    }

    pub fn get(&self, indices: &[usize]) -> MultiPoly {
        let mut key = indices.to_vec();
        key.sort_unstable();
        self.entries
            .get(&key)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(self.n))
    }

    /// Nonzero entries keyed by sorted index tuples.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &MultiPoly)> {
        self.entries.iter()
    }

    /// `A = a_{i1…im}(x) y^{i1}⋯y^{im}`: each sorted tuple contributes its
    /// multinomial multiplicity times the entry times the y-monomial.
    pub fn to_polynomial(&self) -> MultiPoly {
        let mut out = MultiPoly::zero(self.n);
        for (key, value) in &self.entries {
            let counts = counts_of(key, self.n);
            let mult = Rational::from_integer(multinomial(&counts));
            let ym = Monomial::new(vec![0; self.n], counts);
            out = out + value.mul_term(&ym, &mult);
        }
        out
    }

    /// Polarization: recovers the symmetric coefficients of a y-homogeneous
    /// polynomial of degree `m`.
    pub fn from_polynomial(a: &MultiPoly, m: u32) -> Result<Self, FinslerError> {
        match a.homogeneous_y_degree() {
            Err(_) => return Err(FinslerError::ZeroMetric),
            Ok(Homogeneity::Degree(d)) if d == m => {}
            Ok(found) => return Err(FinslerError::NotHomogeneous { expected: m, found }),
        }
        let n = a.n();
        let mut tensor = SymmetricTensor::new(n, m);
        for (ym, coeff) in a.split_by_y() {
            let counts = ym.y_exponents();
            let key: Vec<usize> = counts
                .iter()
                .enumerate()
                .flat_map(|(i, &c)| std::iter::repeat_n(i, c as usize))
                .collect();
            let inv = Rational::new(BigInt::one(), multinomial(counts));
            let entry = coeff.scale(&inv);
            if !entry.is_zero() {
                tensor.entries.insert(key, entry);
            }
        }
        Ok(tensor)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(MultiPoly::is_zero)
    }
}
