//! Bracket polynomials grouping the dually-flat residual, the projective
//! bracket `T_l`, and the contraction probes built from them.

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::rational::{format_rational, int};
use crate::algebra::{MultiPoly, Rational};
use crate::report::{ConditionReport, Verdict};

use super::residual::dually_flat_residual;
use super::{KropinaError, KropinaInstance};

/// Coefficients of a bracket `c_a·A_l A_0 + c_b·A A_0l + c_c·A A_x^l`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ATable {
    lone: Rational,
    mixed: Rational,
    spatial: Rational,
}

impl ATable {
    /// `C1_l = (4−m) A_l A_0 + m A A_0l − 2m A A_x^l`.
    fn c1(m: i64) -> Self {
        ATable {
            lone: int(4 - m),
            mixed: int(m),
            spatial: int(-2 * m),
        }
    }

    /// `T_l = m A (A_0l − A_x^l) − (m−2) A_0 A_l`.
    fn hamel(m: i64) -> Self {
        ATable {
            lone: int(2 - m),
            mixed: int(m),
            spatial: int(-m),
        }
    }

    fn build(&self, inst: &KropinaInstance, l: usize) -> MultiPoly {
        let d = inst.derived();
        let a = inst.a();
        (&d.a_i[l] * &d.a_0).scale(&self.lone)
            + (a * &d.a_0l[l]).scale(&self.mixed)
            + (a * &d.a_x[l]).scale(&self.spatial)
    }

    /// `κ` with `Σ_l y^l·bracket_l = κ A A_0`, from the contractions
    /// `y^l A_l = mA`, `y^l A_0l = m A_0`, `y^l A_x^l = A_0`.
    fn contraction_constant(&self, m: i64) -> Rational {
        &self.lone * int(m) + &self.mixed * int(m) + &self.spatial
    }
}

/// `(C1_l, C2_l, C3_l)` for a fixed `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Brackets {
    pub c1: MultiPoly,
    pub c2: MultiPoly,
    pub c3: MultiPoly,
}

fn brackets_unchecked(inst: &KropinaInstance, l: usize) -> Brackets {
    let d = inst.derived();
    let m = i64::from(inst.m());
    let b = inst.beta();
    let c1 = ATable::c1(m).build(inst, l);
    let c2 = &d.beta_0 * &d.a_i[l] + &d.a_0 * &d.beta_i[l];
    let c3 = &d.beta_0l[l] * b
        - (&d.beta_i[l] * &d.beta_0).scale_int(3)
        - (b * &d.beta_x[l]).scale_int(2);
    Brackets { c1, c2, c3 }
}

pub(crate) fn brackets_all(inst: &KropinaInstance) -> Vec<Brackets> {
    (0..inst.n()).map(|l| brackets_unchecked(inst, l)).collect()
}

/// Requires `m > 2`.
pub fn condition_brackets(inst: &KropinaInstance, l: usize) -> Result<Brackets, KropinaError> {
    inst.require_m_above_two()?;
    inst.check_index(l)?;
    Ok(brackets_unchecked(inst, l))
}

/// `T_l = m A (A_0l − A_x^l) − (m−2) A_0 A_l`.
pub fn hamel_bracket(inst: &KropinaInstance, l: usize) -> Result<MultiPoly, KropinaError> {
    inst.check_index(l)?;
    Ok(ATable::hamel(i64::from(inst.m())).build(inst, l))
}

/// Checks `R_l = 4β² C1_l − 8mAβ C2_l − 2m²A² C3_l`.
pub fn bracket_identity_holds(inst: &KropinaInstance, l: usize) -> Result<bool, KropinaError> {
    inst.check_index(l)?;
    let m = i64::from(inst.m());
    let Brackets { c1, c2, c3 } = brackets_unchecked(inst, l);
    let a = inst.a();
    let b = inst.beta();
    let rhs = (&(b * b) * &c1).scale_int(4)
        - (&(a * b) * &c2).scale_int(8 * m)
        - (&(a * a) * &c3).scale_int(2 * m * m);
    Ok(dually_flat_residual(inst, l)? == rhs)
}

/// `κ1, κ2` with `Σ y^l C1_l = κ1 A A_0` and `Σ y^l T_l = κ2 A A_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeConstants {
    #[serde(serialize_with = "crate::report::serialize_rational")]
    pub c1: Rational,
    #[serde(serialize_with = "crate::report::serialize_rational")]
    pub hamel: Rational,
}

pub fn probe_constants(m: u32) -> ProbeConstants {
    let m = i64::from(m);
    ProbeConstants {
        c1: ATable::c1(m).contraction_constant(m),
        hamel: ATable::hamel(m).contraction_constant(m),
    }
}

/// Exact check of both contraction identities. Either one vanishing
/// identically forces `A·A_0 = 0`, hence `A_0 = 0`.
pub fn contraction_probes(inst: &KropinaInstance) -> ConditionReport {
    let n = inst.n();
    let k = probe_constants(inst.m());
    let a_a0 = inst.a() * &inst.derived().a_0;
    let mut report = ConditionReport::new("contraction-probes");

    let c1: Vec<MultiPoly> = (0..n).map(|l| brackets_unchecked(inst, l).c1).collect();
    let lhs = MultiPoly::contract_y(&c1);
    report.push_condition(
        "probe_c1",
        format!("y^l C1_l = {} A A_0", format_rational(&k.c1)),
        Verdict::from_polynomials([("difference", lhs - a_a0.scale(&k.c1))]),
    );

    let t: Vec<MultiPoly> = (0..n)
        .map(|l| ATable::hamel(i64::from(inst.m())).build(inst, l))
        .collect();
    let lhs = MultiPoly::contract_y(&t);
    report.push_condition(
        "probe_hamel",
        format!("y^l T_l = {} A A_0", format_rational(&k.hamel)),
        Verdict::from_polynomials([("difference", lhs - a_a0.scale(&k.hamel))]),
    );

    report.push_fact("A_0", &inst.derived().a_0);
    if !k.c1.is_zero() {
        report.push_fact("C1 = 0 forces", "A A_0 = 0, hence A_0 = 0");
    }
    if !k.hamel.is_zero() {
        report.push_fact("T = 0 forces", "A A_0 = 0, hence A_0 = 0");
    }
    report
}
