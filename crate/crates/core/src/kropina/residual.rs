//! Denominator-cleared PDE residuals of the Kropina change.
//!
//! Both residuals are built twice: once by differentiating the power
//! product with the chain rule and clearing the prefactor, and once from the
//! closed-form expansion in the derived quantities. The two must agree
//! exactly; a mismatch is reported as an implementation fault.

use crate::algebra::rational::{int, rat};
use crate::algebra::{Block, MultiPoly, Normalized, PowerExpr};
use crate::report::Verdict;

use super::{KropinaError, KropinaInstance};

/// `L̄ = F̄² = A^(4/m) β^(−2)`.
pub fn kropina_l(inst: &KropinaInstance) -> PowerExpr {
    power_of_f(inst, 4, -2)
}

/// `F̄ = A^(2/m) β^(−1)`.
pub fn kropina_f(inst: &KropinaInstance) -> PowerExpr {
    power_of_f(inst, 2, -1)
}

fn power_of_f(inst: &KropinaInstance, a_num: i64, b_exp: i64) -> PowerExpr {
    let n = inst.n();
    PowerExpr::single(
        inst.m(),
        inst.a().clone(),
        inst.beta().clone(),
        MultiPoly::one(n),
        &rat(a_num, i64::from(inst.m())),
        b_exp,
    )
    .expect("exponent has denominator m")
}

/// Which flatness equation a residual belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidualKind {
    /// `L_{x^k y^l} y^k − 2 L_{x^l}` with `L = F̄²`.
    DuallyFlat,
    /// `F̄_{x^k y^l} y^k − F̄_{x^l}`.
    Hamel,
}

impl ResidualKind {
    /// `(a, b)` such that the residual is cleared by `m² · β^b · A^(2 − a/m)`.
    pub(crate) fn clearing(self) -> (i64, i64) {
        match self {
            ResidualKind::DuallyFlat => (4, 4),
            ResidualKind::Hamel => (2, 3),
        }
    }

    fn source(self, inst: &KropinaInstance) -> PowerExpr {
        match self {
            ResidualKind::DuallyFlat => kropina_l(inst),
            ResidualKind::Hamel => kropina_f(inst),
        }
    }

    fn x_weight(self) -> i64 {
        match self {
            ResidualKind::DuallyFlat => 2,
            ResidualKind::Hamel => 1,
        }
    }
}

/// Residuals for every `l`, computed through power-product differentiation.
pub fn residuals_by_chain_rule(
    inst: &KropinaInstance,
    kind: ResidualKind,
) -> Result<Vec<MultiPoly>, KropinaError> {
    let n = inst.n();
    let m = i64::from(inst.m());
    let f = kind.source(inst);
    let (a_num, b_clear) = kind.clearing();
    let clear_a = int(2) - rat(a_num, m);
    let first: Vec<PowerExpr> = (0..n)
        .map(|k| f.diff(Block::X, k))
        .collect::<Result<_, _>>()?;
    let mut out = Vec::with_capacity(n);
    for l in 0..n {
        let mut e = first[l].scale(&int(-kind.x_weight()));
        for (k, fk) in first.iter().enumerate() {
            let mixed = fk.diff(Block::Y, l)?;
            e = e.add(&mixed.mul_poly(&MultiPoly::y(n, k)));
        }
        match e.normalize(&clear_a, b_clear)? {
            Normalized::Polynomial(p) => out.push(p.scale_int(m * m)),
            Normalized::NotPolynomial { a_exp, b_exp } => {
                return Err(KropinaError::ImplementationFault(format!(
                    "residual kept A^{a_exp} beta^{b_exp} after clearing"
                )))
            }
        }
    }
    Ok(out)
}

/// Closed-form dually-flat residual
/// `R_l = 4β²[(4−m)A_0A_l + mA(A_0l − 2A_x^l)] − 8mAβ[A_lβ_0 + A_0β_l]
///        + 2m²A²[3β_0β_l + 2ββ_x^l − ββ_0l]`.
pub fn dually_flat_residual_expanded(
    inst: &KropinaInstance,
    l: usize,
) -> Result<MultiPoly, KropinaError> {
    inst.check_index(l)?;
    let d = inst.derived();
    let m = i64::from(inst.m());
    let a = inst.a();
    let b = inst.beta();
    let first = (&d.a_0 * &d.a_i[l]).scale_int(4 - m)
        + (a * &(&d.a_0l[l] - &d.a_x[l].scale_int(2))).scale_int(m);
    let second = &d.a_i[l] * &d.beta_0 + &d.a_0 * &d.beta_i[l];
    let third = (&d.beta_0 * &d.beta_i[l]).scale_int(3) + (b * &d.beta_x[l]).scale_int(2)
        - b * &d.beta_0l[l];
    let b2 = b * b;
    let ab = a * b;
    let a2 = a * a;
    Ok(
        (&b2 * &first).scale_int(4) - (&ab * &second).scale_int(8 * m)
            + (&a2 * &third).scale_int(2 * m * m),
    )
}

/// Closed-form Hamel residual
/// `H_l = 2β²[(2−m)A_0A_l + mA(A_0l − A_x^l)] − 2mAβ[A_lβ_0 + A_0β_l]
///        + m²A²[2β_0β_l + ββ_x^l − ββ_0l]`.
pub fn hamel_residual_expanded(
    inst: &KropinaInstance,
    l: usize,
) -> Result<MultiPoly, KropinaError> {
    inst.check_index(l)?;
    let d = inst.derived();
    let m = i64::from(inst.m());
    let a = inst.a();
    let b = inst.beta();
    let first =
        (&d.a_0 * &d.a_i[l]).scale_int(2 - m) + (a * &(&d.a_0l[l] - &d.a_x[l])).scale_int(m);
    let second = &d.a_i[l] * &d.beta_0 + &d.a_0 * &d.beta_i[l];
    let third = (&d.beta_0 * &d.beta_i[l]).scale_int(2) + b * &d.beta_x[l] - b * &d.beta_0l[l];
    let b2 = b * b;
    let ab = a * b;
    let a2 = a * a;
    Ok(
        (&b2 * &first).scale_int(2) - (&ab * &second).scale_int(2 * m)
            + (&a2 * &third).scale_int(m * m),
    )
}

pub(crate) fn residuals_checked(
    inst: &KropinaInstance,
    kind: ResidualKind,
) -> Result<Vec<MultiPoly>, KropinaError> {
    let by_chain = residuals_by_chain_rule(inst, kind)?;
    for (l, r) in by_chain.iter().enumerate() {
        let expanded = match kind {
            ResidualKind::DuallyFlat => dually_flat_residual_expanded(inst, l)?,
            ResidualKind::Hamel => hamel_residual_expanded(inst, l)?,
        };
        if &expanded != r {
            return Err(KropinaError::ImplementationFault(format!(
                "{kind:?} residual for l={} differs between construction paths",
                l + 1
            )));
        }
    }
    Ok(by_chain)
}

/// `R_l`: `L̄_{x^k y^l} y^k − 2 L̄_{x^l}` multiplied by `m² β⁴ A^(2−4/m)`.
pub fn dually_flat_residual(inst: &KropinaInstance, l: usize) -> Result<MultiPoly, KropinaError> {
    inst.check_index(l)?;
    Ok(dually_flat_residuals(inst)?.swap_remove(l))
}

pub fn dually_flat_residuals(inst: &KropinaInstance) -> Result<Vec<MultiPoly>, KropinaError> {
    residuals_checked(inst, ResidualKind::DuallyFlat)
}

/// `H_l`: `F̄_{x^k y^l} y^k − F̄_{x^l}` multiplied by `m² β³ A^(2−2/m)`.
pub fn hamel_residual(inst: &KropinaInstance, l: usize) -> Result<MultiPoly, KropinaError> {
    inst.check_index(l)?;
    Ok(hamel_residuals(inst)?.swap_remove(l))
}

pub fn hamel_residuals(inst: &KropinaInstance) -> Result<Vec<MultiPoly>, KropinaError> {
    residuals_checked(inst, ResidualKind::Hamel)
}

fn labelled(prefix: &str, polys: Vec<MultiPoly>) -> Vec<(String, MultiPoly)> {
    polys
        .into_iter()
        .enumerate()
        .map(|(l, p)| (format!("{prefix}_{}", l + 1), p))
        .collect()
}

/// Holds iff every `R_l` is the zero polynomial.
pub fn check_dually_flat(inst: &KropinaInstance) -> Result<Verdict, KropinaError> {
    Ok(Verdict::from_polynomials(labelled(
        "R",
        dually_flat_residuals(inst)?,
    )))
}

/// Holds iff every `H_l` is the zero polynomial.
pub fn check_projectively_flat(inst: &KropinaInstance) -> Result<Verdict, KropinaError> {
    Ok(Verdict::from_polynomials(labelled(
        "H",
        hamel_residuals(inst)?,
    )))
}

/// Value of the clearing prefactor `m² β^b A^(2 − a/m)` at a point.
pub(crate) fn clearing_factor_f64(kind: ResidualKind, m: u32, a: f64, beta: f64) -> f64 {
    let (a_num, b_clear) = kind.clearing();
    let m = f64::from(m);
    m * m * beta.powi(b_clear as i32) * a.powf(2.0 - a_num as f64 / m)
}
