//! Refutation-only irreducibility heuristic for `A`.
//!
//! Two searches, both confirmed by exact division over `ℚ(x)[y]`:
//!
//! 1. y-linear forms with small integer coefficients;
//! 2. rational zeros of `A` restricted to random rational lines in `y` at
//!    random rational `x`. A rational linear factor meets every rational line
//!    in a rational point, so such zeros are turned into candidate
//!    hyperplanes through the origin.
//!
//! Returning `None` is never a proof of irreducibility.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{exact_divide, CoeffField, Division, Monomial, MultiPoly, Rational};

const SMALL_COEFFS: i64 = 2;
const LINE_TRIALS: usize = 12;
const HEURISTIC_SEED: u64 = 0x006b_726f_7069_6e61;
const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

/// Returns a proper factor of `a` when one is found.
pub fn irreducibility_heuristic(a: &MultiPoly) -> Option<MultiPoly> {
    if a.y_degree() < 2 {
        return None;
    }
    small_linear_factor(a).or_else(|| line_restriction_factor(a))
}

fn divides(a: &MultiPoly, candidate: &MultiPoly) -> bool {
    matches!(
        exact_divide(a, candidate, CoeffField::RationalFunctionsInX),
        Ok(Division::Exact(_))
    )
}

fn linear_form(coeffs: &[Rational]) -> MultiPoly {
    let n = coeffs.len();
    MultiPoly::from_terms(
        n,
        coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (Monomial::y_var(n, i), c.clone())),
    )
}

fn small_linear_factor(a: &MultiPoly) -> Option<MultiPoly> {
    let n = a.n();
    let width = (2 * SMALL_COEFFS + 1) as usize;
    let total = width.pow(n as u32);
    for code in 0..total {
        let mut rest = code;
        let coeffs: Vec<i64> = (0..n)
            .map(|_| {
                let c = (rest % width) as i64 - SMALL_COEFFS;
                rest /= width;
                c
            })
            .collect();
        // one representative per line: primitive, first nonzero entry positive
        let Some(first) = coeffs.iter().find(|&&c| c != 0) else {
            continue;
        };
        if *first < 0 || coeffs.iter().fold(0i64, |g, &c| g.gcd(&c)) != 1 {
            continue;
        }
        let rc: Vec<Rational> = coeffs
            .iter()
            .map(|&c| Rational::from_integer(c.into()))
            .collect();
        let ell = linear_form(&rc);
        if divides(a, &ell) {
            return Some(ell);
        }
    }
    None
}

/// Univariate polynomial, coefficients in ascending degree.
type Univariate = Vec<Rational>;

fn uni_mul(a: &Univariate, b: &Univariate) -> Univariate {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn uni_eval(p: &Univariate, t: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
}

/// `p(x0, t·u + v)` as a univariate polynomial in `t`.
fn restrict_to_line(p: &MultiPoly, x0: &[Rational], u: &[Rational], v: &[Rational]) -> Univariate {
    let py = p.substitute_x(x0);
    let mut out: Univariate = vec![Rational::zero(); p.y_degree() as usize + 1];
    for (m, c) in py.terms() {
        let mut term: Univariate = vec![c.clone()];
        for (i, &e) in m.y_exponents().iter().enumerate() {
            for _ in 0..e {
                term = uni_mul(&term, &vec![v[i].clone(), u[i].clone()]);
            }
        }
        for (k, t) in term.into_iter().enumerate() {
            out[k] += t;
        }
    }
    out
}

fn divisors(v: &BigInt) -> Option<Vec<BigInt>> {
    let v = v.abs().to_u64()?;
    if v == 0 || v > DIVISOR_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(BigInt::from(d));
            if d * d != v {
                out.push(BigInt::from(v / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational roots by the rational root test.
fn rational_roots(p: &Univariate) -> Vec<Rational> {
    let mut coeffs: Vec<Rational> = p.clone();
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    if coeffs.len() < 2 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let shift = coeffs.iter().take_while(|c| c.is_zero()).count();
    if shift > 0 {
        roots.push(Rational::zero());
        coeffs.drain(..shift);
    }
    if coeffs.len() < 2 {
        return roots;
    }
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return roots;
    };
    for p in &ps {
        for q in &qs {
            for sign in [1, -1] {
                let cand = Rational::new(p * BigInt::from(sign), q.clone());
                if !roots.contains(&cand) && uni_eval(&coeffs, &cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

/// Basis vector of the null space of `rows` when it is one-dimensional.
fn normal_vector(rows: &[Vec<Rational>], n: usize) -> Option<Vec<Rational>> {
    let mut mat: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..mat.len()).find(|&i| !mat[i][col].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = Rational::one() / mat[r][col].clone();
        for v in mat[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..mat.len() {
            if i != r && !mat[i][col].is_zero() {
                let f = mat[i][col].clone();
                let pivot_row = mat[r].clone();
                for (v, p) in mat[i].iter_mut().zip(&pivot_row).take(n) {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if pivots.len() + 1 != n {
        return None;
    }
    let free = (0..n).find(|c| !pivots.contains(c))?;
    let mut v = vec![Rational::zero(); n];
    v[free] = Rational::one();
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = -mat[row][free].clone();
    }
    Some(v)
}

fn small_rational_vec(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<Rational> {
    (0..n)
        .map(|_| Rational::from_integer(rng.gen_range(-bound..=bound).into()))
        .collect()
}

fn line_restriction_factor(a: &MultiPoly) -> Option<MultiPoly> {
    let n = a.n();
    let mut rng = ChaCha8Rng::seed_from_u64(HEURISTIC_SEED);
    let mut zeros: Vec<Vec<Rational>> = Vec::new();
    for _ in 0..LINE_TRIALS {
        let x0 = small_rational_vec(&mut rng, n, 2);
        let u = small_rational_vec(&mut rng, n, 3);
        let v = small_rational_vec(&mut rng, n, 3);
        if u.iter().all(Zero::is_zero) {
            continue;
        }
        let restricted = restrict_to_line(a, &x0, &u, &v);
        for t in rational_roots(&restricted) {
            let w: Vec<Rational> = u.iter().zip(&v).map(|(ui, vi)| &t * ui + vi).collect();
            if w.iter().any(|c| !c.is_zero()) && !zeros.contains(&w) {
                zeros.push(w);
            }
        }
    }
    // candidate hyperplanes through n−1 of the collected zeros
    let k = n - 1;
    let mut tried = 0;
    let mut idx: Vec<usize> = (0..k).collect();
    if zeros.len() < k {
        return None;
    }
    loop {
        let rows: Vec<Vec<Rational>> = idx.iter().map(|&i| zeros[i].clone()).collect();
        if let Some(normal) = normal_vector(&rows, n) {
            let ell = linear_form(&normal);
            if divides(a, &ell) {
                return Some(ell);
            }
        }
        tried += 1;
        if tried > 200 {
            return None;
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < zeros.len() - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse;
    use crate::algebra::rational::{int, rat};

    #[test]
    fn sum_of_cubes_factors() {
        let a = parse("y1^3 + y2^3", 2).unwrap();
        assert_eq!(
            irreducibility_heuristic(&a),
            Some(parse("y1 + y2", 2).unwrap())
        );
    }

    #[test]
    fn sample_cubic_survives() {
        let a = parse("y1^3 + y1*y2^2 + y2^3", 2).unwrap();
        assert_eq!(irreducibility_heuristic(&a), None);
        let a = parse("(1+x1)*(y1^3 + y1*y2^2 + y2^3)", 2).unwrap();
        assert_eq!(irreducibility_heuristic(&a), None);
    }

    #[test]
    fn constructed_factor_is_found() {
        let a = parse("(y1 + y2)*(y1^2 + x1*y2^2 + y1*y2)", 2).unwrap();
        assert!(irreducibility_heuristic(&a).is_some());
        // a factor outside the small grid, found through line restrictions
        let a = parse("(7*y1 - 5*y2)*(y1^2 + y2^2)", 2).unwrap();
        let f = irreducibility_heuristic(&a).expect("factor");
        assert!(divides(&a, &f));
        let a = parse("(3*y1 + 7*y3 - 5*y2)*(y1^2 + y2^2 + y3^2)", 3).unwrap();
        let f = irreducibility_heuristic(&a).expect("factor");
        assert!(divides(&a, &f));
        assert_eq!(f.y_degree(), 1);
    }

    #[test]
    fn rational_root_test() {
        // (2t - 1)(t + 3) t = 2t^3 + 5t^2 - 3t
        let p = vec![int(0), int(-3), int(5), int(2)];
        let mut roots = rational_roots(&p);
        roots.sort();
        assert_eq!(roots, vec![int(-3), int(0), rat(1, 2)]);
        // t^3 + t + 1 has none
        assert!(rational_roots(&vec![int(1), int(1), int(0), int(1)]).is_empty());
    }
}
