//! Floating-point oracle: central finite differences of `L̄` and `F̄`
//! compared with the exact residuals divided by their clearing factor.

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::rational::{rat, to_f64};
use crate::algebra::Rational;
use crate::report::SamplePoint;

use super::residual::{clearing_factor_f64, residuals_checked, ResidualKind};
use super::{KropinaError, KropinaInstance};

pub const DEFAULT_STEP: f64 = 1e-4;

/// Per-`l` comparison at one point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentComparison {
    pub l: usize,
    pub numeric: f64,
    pub symbolic: f64,
    pub disagreement: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrosscheckReport {
    pub kind: ResidualKind,
    pub point: SamplePoint,
    pub step: f64,
    pub components: Vec<ComponentComparison>,
}

impl CrosscheckReport {
    /// Largest `|numeric − symbolic| / max(1, |symbolic|)` over `l`.
    pub fn max_disagreement(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.disagreement)
            .fold(0.0, f64::max)
    }

    pub fn within(&self, tolerance: f64) -> bool {
        self.max_disagreement() <= tolerance
    }
}

struct Sampler<'a> {
    inst: &'a KropinaInstance,
    a_pow: f64,
    b_pow: i32,
}

impl Sampler<'_> {
    fn f(&self, x: &[f64], y: &[f64]) -> f64 {
        let a = self.inst.a().evaluate_f64(x, y);
        let b = self.inst.beta().evaluate_f64(x, y);
        a.powf(self.a_pow) * b.powi(-self.b_pow)
    }
}

/// `Σ_k y^k ∂²f/∂x^k∂y^l` from the 4-point stencil along `(y, e_l)`.
fn mixed_stencil(s: &Sampler<'_>, x: &[f64], y: &[f64], l: usize, h: f64) -> f64 {
    let g = |a: f64, b: f64| {
        let xs: Vec<f64> = x.iter().zip(y).map(|(xi, yi)| xi + a * yi).collect();
        let mut ys = y.to_vec();
        ys[l] += b;
        s.f(&xs, &ys)
    };
    (g(h, h) - g(h, -h) - g(-h, h) + g(-h, -h)) / (4.0 * h * h)
}

fn x_stencil(s: &Sampler<'_>, x: &[f64], y: &[f64], l: usize, h: f64) -> f64 {
    let mut xp = x.to_vec();
    let mut xm = x.to_vec();
    xp[l] += h;
    xm[l] -= h;
    (s.f(&xp, y) - s.f(&xm, y)) / (2.0 * h)
}

/// Compares the finite-difference residual with the exact one at `point`.
///
/// Requires `A > 0` and `β > 0` at the point.
pub fn numeric_crosscheck(
    inst: &KropinaInstance,
    kind: ResidualKind,
    point: &SamplePoint,
    step: f64,
) -> Result<CrosscheckReport, KropinaError> {
    if !(step.is_finite() && step > 0.0) {
        return Err(KropinaError::BadStep(step));
    }
    if point.n() != inst.n() {
        return Err(KropinaError::NotAdmissible(format!(
            "point has dimension {}, instance has {}",
            point.n(),
            inst.n()
        )));
    }
    let a_val = point.eval(inst.a());
    let b_val = point.eval(inst.beta());
    if !a_val.is_positive() || !b_val.is_positive() {
        return Err(KropinaError::NotAdmissible(format!(
            "need A > 0 and beta > 0 at {point}"
        )));
    }
    let m = inst.m();
    let (a_num, b_exp) = match kind {
        ResidualKind::DuallyFlat => (4.0, 2),
        ResidualKind::Hamel => (2.0, 1),
    };
    let weight = match kind {
        ResidualKind::DuallyFlat => 2.0,
        ResidualKind::Hamel => 1.0,
    };
    let sampler = Sampler {
        inst,
        a_pow: a_num / f64::from(m),
        b_pow: b_exp,
    };
    let x = point.x_f64();
    let y = point.y_f64();
    let exact = residuals_checked(inst, kind)?;
    let factor = clearing_factor_f64(kind, m, to_f64(&a_val), to_f64(&b_val));
    let components = exact
        .iter()
        .enumerate()
        .map(|(l, r)| {
            let numeric = mixed_stencil(&sampler, &x, &y, l, step)
                - weight * x_stencil(&sampler, &x, &y, l, step);
            let symbolic = to_f64(&point.eval(r)) / factor;
            let disagreement = (numeric - symbolic).abs() / symbolic.abs().max(1.0);
            ComponentComparison {
                l: l + 1,
                numeric,
                symbolic,
                disagreement,
            }
        })
        .collect();
    Ok(CrosscheckReport {
        kind,
        point: point.clone(),
        step,
        components,
    })
}

const X_GRID: i64 = 16;
const MAX_ATTEMPTS_PER_POINT: usize = 200;

/// Seeded rational points with `x ∈ [−1/4, 1/4]^n`, `y ∈ ±[3/4, 5/4]^n`,
/// `A > 0` and `β > 0`. The sign of `y` is flipped when that makes `β`
/// positive.
pub fn sample_admissible_points(
    inst: &KropinaInstance,
    count: usize,
    seed: u64,
) -> Result<Vec<SamplePoint>, KropinaError> {
    let n = inst.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > MAX_ATTEMPTS_PER_POINT * count.max(1) {
            return Err(KropinaError::NotAdmissible(format!(
                "found only {} of {count} points with A > 0 and beta > 0",
                out.len()
            )));
        }
        let x: Vec<Rational> = (0..n)
            .map(|_| rat(rng.gen_range(-X_GRID / 4..=X_GRID / 4), X_GRID))
            .collect();
        let mut y: Vec<Rational> = (0..n)
            .map(|_| rat(rng.gen_range(3 * X_GRID / 4..=5 * X_GRID / 4), X_GRID))
            .collect();
        let mut p = SamplePoint::new(x.clone(), y.clone());
        if p.eval(inst.beta()).is_negative() {
            y.iter_mut().for_each(|v| *v = -v.clone());
            p = SamplePoint::new(x, y);
        }
        if p.eval(inst.beta()).is_positive() && p.eval(inst.a()).is_positive() {
            out.push(p);
        }
    }
    Ok(out)
}

/// `Σ err(h) / Σ err(h/2)` over the given points, skipping points where
/// both errors vanish. `None` when every point was skipped.
pub fn step_halving_ratio(
    inst: &KropinaInstance,
    kind: ResidualKind,
    points: &[SamplePoint],
    step: f64,
) -> Result<Option<f64>, KropinaError> {
    let mut coarse = 0.0;
    let mut fine = 0.0;
    for p in points {
        let c = numeric_crosscheck(inst, kind, p, step)?.max_disagreement();
        let f = numeric_crosscheck(inst, kind, p, step / 2.0)?.max_disagreement();
        coarse += c;
        fine += f;
    }
    Ok((fine > 0.0).then(|| coarse / fine))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse;
    use crate::finsler::{MthRootMetric, OneForm};

    fn inst(a: &str, beta: &str) -> KropinaInstance {
        let metric = MthRootMetric::new(2, 3, parse(a, 2).unwrap()).unwrap();
        let beta = OneForm::from_polynomial(&parse(beta, 2).unwrap()).unwrap();
        KropinaInstance::new(metric, beta).unwrap()
    }

    fn unit_point() -> SamplePoint {
        SamplePoint::new(vec![rat(0, 1), rat(0, 1)], vec![rat(1, 1), rat(1, 1)])
    }

    #[test]
    fn minkowski_residuals_vanish_numerically() {
        let i = inst("y1^3 + y1*y2^2 + y2^3", "y1");
        for kind in [ResidualKind::DuallyFlat, ResidualKind::Hamel] {
            let r = numeric_crosscheck(&i, kind, &unit_point(), DEFAULT_STEP).unwrap();
            assert!(r.components.iter().all(|c| c.numeric.abs() <= 1e-6));
        }
    }

    #[test]
    fn perturbed_agrees() {
        let i = inst("(1+x1)*y1^3 + y1*y2^2 + y2^3", "y1");
        for kind in [ResidualKind::DuallyFlat, ResidualKind::Hamel] {
            let r = numeric_crosscheck(&i, kind, &unit_point(), DEFAULT_STEP).unwrap();
            assert!(r.within(1e-6), "{r:?}");
            assert!(r.components[0].symbolic.abs() > 1e-3);
        }
    }

    #[test]
    fn second_order_convergence() {
        let i = inst("(1+x1)*y1^3 + y1*y2^2 + y2^3", "y1");
        let pts = sample_admissible_points(&i, 5, 7).unwrap();
        let ratio = step_halving_ratio(&i, ResidualKind::DuallyFlat, &pts, 1e-2)
            .unwrap()
            .unwrap();
        assert!((3.0..=5.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn rejects_bad_inputs() {
        let i = inst("y1^3 + y1*y2^2 + y2^3", "y1");
        let p = unit_point();
        assert!(matches!(
            numeric_crosscheck(&i, ResidualKind::Hamel, &p, 0.0),
            Err(KropinaError::BadStep(_))
        ));
        let neg = SamplePoint::new(vec![rat(0, 1); 2], vec![rat(-1, 1), rat(1, 1)]);
        assert!(matches!(
            numeric_crosscheck(&i, ResidualKind::Hamel, &neg, 1e-4),
            Err(KropinaError::NotAdmissible(_))
        ));
    }
}
