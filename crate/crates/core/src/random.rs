//! Seeded generators for random metrics, 1-forms and polynomials.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::rational::{int, rat};
use crate::algebra::{Monomial, MultiPoly};
use crate::finsler::{MthRootMetric, OneForm};
use crate::kropina::KropinaInstance;

/// All exponent vectors of length `n` summing to `d`.
pub fn exponent_vectors(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in exponent_vectors(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub struct InstanceGenerator {
    rng: ChaCha8Rng,
}

impl InstanceGenerator {
    pub fn new(seed: u64) -> Self {
        InstanceGenerator {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn small_nonzero(&mut self, bound: i64) -> i64 {
        let v = self.rng.gen_range(1..=bound);
        if self.rng.gen_bool(0.5) {
            -v
        } else {
            v
        }
    }

    /// Sparse polynomial in `x` of degree at most `x_degree`.
    pub fn x_coefficient(&mut self, n: usize, x_degree: u32) -> MultiPoly {
        let mut p = MultiPoly::constant(n, int(self.rng.gen_range(-3..=3)));
        let extra = self.rng.gen_range(0..=2);
        for _ in 0..extra {
            let d = self.rng.gen_range(1..=x_degree.max(1)).min(x_degree);
            if d == 0 {
                break;
            }
            let exps = exponent_vectors(n, d);
            let e = exps.choose(&mut self.rng).expect("nonempty").clone();
            let c = self.small_nonzero(2);
            p = p + MultiPoly::monomial(n, Monomial::new(e, vec![0; n]), int(c));
        }
        p
    }

    /// Random y-homogeneous polynomial of degree `d` with x-coefficients of
    /// degree at most `x_degree`. Never zero.
    pub fn homogeneous(&mut self, n: usize, d: u32, x_degree: u32) -> MultiPoly {
        let ys = exponent_vectors(n, d);
        loop {
            let terms = self.rng.gen_range(1..=ys.len().min(4));
            let mut p = MultiPoly::zero(n);
            for e in ys.choose_multiple(&mut self.rng, terms) {
                let c = self.x_coefficient(n, x_degree);
                p = p + &c * &MultiPoly::monomial(n, Monomial::new(vec![0; n], e.clone()), int(1));
            }
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// Random metric with coefficients of x-degree at most `x_degree`.
    pub fn metric(&mut self, n: usize, m: u32, x_degree: u32) -> MthRootMetric {
        let a = self.homogeneous(n, m, x_degree);
        MthRootMetric::new(n, m, a).expect("generated A is homogeneous")
    }

    /// A metric that is positive on the positive orthant near `x = 0`:
    /// dominant diagonal terms `(4 + small x-perturbation)·y_i^m` plus a
    /// few small cross terms.
    pub fn positive_metric(&mut self, n: usize, m: u32) -> MthRootMetric {
        let mut a = MultiPoly::zero(n);
        for i in 0..n {
            let j = self.rng.gen_range(0..n);
            let c = MultiPoly::constant(n, int(4))
                + MultiPoly::x(n, j).scale_int(self.rng.gen_range(-1..=1));
            a = a + &c * &MultiPoly::y(n, i).pow(m);
        }
        let ys = exponent_vectors(n, m);
        for e in ys.choose_multiple(&mut self.rng, 2) {
            let j = self.rng.gen_range(0..n);
            let c = MultiPoly::constant(n, rat(self.rng.gen_range(-1..=1), 4))
                + MultiPoly::x(n, j).scale(&rat(self.rng.gen_range(-1..=1), 4));
            a = a + &c * &MultiPoly::monomial(n, Monomial::new(vec![0; n], e.clone()), int(1));
        }
        MthRootMetric::new(n, m, a).expect("generated A is homogeneous")
    }

    /// Random 1-form with coefficients of x-degree at most 1. Never zero.
    pub fn one_form(&mut self, n: usize) -> OneForm {
        loop {
            let b: Vec<MultiPoly> = (0..n).map(|_| self.x_coefficient(n, 1)).collect();
            if let Ok(f) = OneForm::new(b) {
                return f;
            }
        }
    }

    /// A 1-form positive on the positive orthant near `x = 0`.
    pub fn positive_one_form(&mut self, n: usize) -> OneForm {
        let b = (0..n)
            .map(|_| {
                let j = self.rng.gen_range(0..n);
                MultiPoly::constant(n, int(self.rng.gen_range(1..=3)))
                    + MultiPoly::x(n, j).scale_int(self.rng.gen_range(-1..=1))
            })
            .collect();
        OneForm::new(b).expect("positive constants")
    }

    /// A 1-form with constant coefficients.
    pub fn constant_one_form(&mut self, n: usize) -> OneForm {
        loop {
            let b: Vec<MultiPoly> = (0..n)
                .map(|_| MultiPoly::constant(n, int(self.rng.gen_range(-3..=3))))
                .collect();
            if let Ok(f) = OneForm::new(b) {
                return f;
            }
        }
    }

    fn shape(&mut self) -> (usize, u32) {
        (self.rng.gen_range(2..=3), self.rng.gen_range(3..=5))
    }

    /// `n ∈ {2,3}`, `m ∈ {3,4,5}`, x-degree at most 2.
    pub fn instance(&mut self) -> KropinaInstance {
        let (n, m) = self.shape();
        let metric = self.metric(n, m, 2);
        let beta = self.one_form(n);
        KropinaInstance::new(metric, beta).expect("dimensions agree")
    }

    /// An instance admitting sample points with `A > 0`, `β > 0`.
    pub fn positive_instance(&mut self) -> KropinaInstance {
        let (n, m) = self.shape();
        let metric = self.positive_metric(n, m);
        let beta = self.positive_one_form(n);
        KropinaInstance::new(metric, beta).expect("dimensions agree")
    }

    /// An instance with every coefficient independent of `x`.
    pub fn x_free_instance(&mut self) -> KropinaInstance {
        let (n, m) = self.shape();
        let metric = self.metric(n, m, 0);
        let beta = self.constant_one_form(n);
        KropinaInstance::new(metric, beta).expect("dimensions agree")
    }

    /// Sparse polynomial in both blocks with small rational coefficients.
    pub fn polynomial(&mut self, n: usize, max_degree: u32, max_terms: usize) -> MultiPoly {
        let terms = self.rng.gen_range(0..=max_terms);
        let mut p = MultiPoly::zero(n);
        for _ in 0..terms {
            let x: Vec<u32> = (0..n).map(|_| self.rng.gen_range(0..=max_degree)).collect();
            let y: Vec<u32> = (0..n).map(|_| self.rng.gen_range(0..=max_degree)).collect();
            let c = rat(self.small_nonzero(9), self.rng.gen_range(1..=4));
            p = p + MultiPoly::monomial(n, Monomial::new(x, y), c);
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Homogeneity;

    #[test]
    fn exponent_vector_count() {
        assert_eq!(exponent_vectors(2, 3).len(), 4);
        assert_eq!(exponent_vectors(3, 2).len(), 6);
    }

    #[test]
    fn generated_metrics_are_homogeneous() {
        let mut g = InstanceGenerator::new(1);
        for _ in 0..20 {
            let i = g.instance();
            assert_eq!(
                i.a().homogeneous_y_degree().unwrap(),
                Homogeneity::Degree(i.m())
            );
            assert!(i.a().x_degree() <= 2);
        }
    }

    #[test]
    fn deterministic() {
        let a = InstanceGenerator::new(9).instance();
        let b = InstanceGenerator::new(9).instance();
        assert_eq!(a, b);
    }
}
