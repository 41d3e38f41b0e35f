//! Characterization checkers for dual flatness and projective flatness of
//! the Kropina change, each cross-checked against the direct residuals.

use crate::algebra::rational::int;
use crate::algebra::MultiPoly;
use crate::report::{ConditionReport, Status, Verdict, Witness};

use super::brackets::{brackets_all, probe_constants};
use super::residual::{check_dually_flat, check_projectively_flat};
use super::theta::{check_theta_condition, extract_theta, extract_theta_scaled, ThetaExtraction};
use super::{hamel_bracket, KropinaError, KropinaInstance};

/// Conclusion text used when the characterization holds but `A` still
/// depends on `x` in the given chart.
pub const LOCALLY_MINKOWSKI_UNPROVEN: &str =
    "predicted locally Minkowskian; sufficient condition not met in this chart";

fn labelled(prefix: &str, polys: Vec<MultiPoly>) -> Vec<(String, MultiPoly)> {
    polys
        .into_iter()
        .enumerate()
        .map(|(l, p)| (format!("{prefix}_{}", l + 1), p))
        .collect()
}

/// Verdict for a θ-condition when no θ could be extracted. A failed
/// extraction only refutes the characterization when the direct check
/// fails as well.
fn theta_fallback(extraction: &ThetaExtraction, direct: &Verdict) -> Verdict {
    match extraction {
        ThetaExtraction::Found(_) => unreachable!("handled by the caller"),
        ThetaExtraction::Inconclusive { reason } => Verdict::Inconclusive {
            reason: reason.clone(),
        },
        ThetaExtraction::NotDivisible { remainder } if direct.fails() => Verdict::Fails {
            witnesses: vec![Witness::for_polynomial(
                "division remainder",
                remainder.clone(),
            )],
        },
        ThetaExtraction::WrongDegree { quotient } if direct.fails() => Verdict::Fails {
            witnesses: vec![Witness::for_polynomial("quotient", quotient.clone())],
        },
        other => Verdict::Inconclusive {
            reason: format!("no theta extracted ({other}) although the direct check holds"),
        },
    }
}

fn push_agreement(report: &mut ConditionReport, direct: &Verdict) {
    report.push_fact("direct verdict", direct.status());
    report.push_fact(
        "agrees with direct verdict",
        report.overall == direct.status(),
    );
}

/// Checks the characterization of dual flatness through the β-bracket
/// `C3`, the mixed bracket `C2` and the θ-condition, alongside the direct
/// residual check.
pub fn check_theorem1(inst: &KropinaInstance) -> Result<ConditionReport, KropinaError> {
    inst.require_m_above_two()?;
    let brackets = brackets_all(inst);
    let direct = check_dually_flat(inst)?;
    let mut report = ConditionReport::new("theorem1");

    report.push_condition(
        "beta_condition",
        "beta_0l beta - 3 beta_l beta_0 = 2 beta beta_x^l",
        Verdict::from_polynomials(labelled(
            "C3",
            brackets.iter().map(|b| b.c3.clone()).collect(),
        )),
    );
    report.push_condition(
        "mixed_condition",
        "beta_0 A_l = -beta_l A_0",
        Verdict::from_polynomials(labelled(
            "C2",
            brackets.iter().map(|b| b.c2.clone()).collect(),
        )),
    );

    let extraction = extract_theta(inst)?;
    let theta_verdict = match &extraction {
        ThetaExtraction::Found(theta) => check_theta_condition(inst, theta),
        other => theta_fallback(other, &direct),
    };
    report.push_condition(
        "theta_condition",
        "A_0 = theta A and 3m A_x^l = m A theta_l + 4 theta A_l",
        theta_verdict,
    );

    push_agreement(&mut report, &direct);
    report.push_fact("theta", &extraction);
    let c1_zero = brackets.iter().all(|b| b.c1.is_zero());
    report.push_fact("a_bracket_vanishes", c1_zero);
    report.push_fact(
        "probe",
        format!("y^l C1_l = {} A A_0", probe_constants(inst.m()).c1),
    );
    if c1_zero {
        report.push_fact(
            "A_0 = 0 (forced by the probe)",
            inst.derived().a_0.is_zero(),
        );
    }
    let all_zero = c1_zero && brackets.iter().all(|b| b.c2.is_zero() && b.c3.is_zero());
    if all_zero && !inst.derived().a_0.is_zero() {
        return Err(KropinaError::ImplementationFault(
            "all brackets vanish but A_0 does not".into(),
        ));
    }
    report.push_fact("irreducibility", inst.metric().irreducibility());
    Ok(report)
}

/// Checks the projective-flatness characterization: `T_l ≡ 0` and
/// `A_0 = 2m θ A`, with the Berwald and Minkowski conclusions.
pub fn check_prop31(inst: &KropinaInstance) -> Result<ConditionReport, KropinaError> {
    inst.require_m_above_two()?;
    let n = inst.n();
    let m = i64::from(inst.m());
    let direct = check_projectively_flat(inst)?;
    let mut report = ConditionReport::new("prop31");

    let t: Vec<MultiPoly> = (0..n)
        .map(|l| hamel_bracket(inst, l))
        .collect::<Result<_, _>>()?;
    let t_zero = t.iter().all(MultiPoly::is_zero);
    report.push_condition(
        "hamel_bracket",
        "m A (A_0l - A_x^l) = (m-2) A_0 A_l",
        Verdict::from_polynomials(labelled("T", t)),
    );

    let extraction = extract_theta_scaled(inst, &int(2 * m))?;
    let theta_verdict = match &extraction {
        ThetaExtraction::Found(_) => Verdict::Holds,
        other => theta_fallback(other, &direct),
    };
    report.push_condition("theta_divisibility", "A_0 = 2m A theta", theta_verdict);

    push_agreement(&mut report, &direct);
    report.push_fact("theta", &extraction);
    report.push_fact(
        "probe",
        format!("y^l T_l = {} A A_0", probe_constants(inst.m()).hamel),
    );
    if t_zero {
        report.push_fact(
            "A_0 = 0 (forced by the probe)",
            inst.derived().a_0.is_zero(),
        );
    }
    let holds = report.overall == Status::Holds;
    let minkowski = inst.metric().minkowski_sufficient();
    report.push_fact("berwald", holds);
    report.push_fact("minkowski_sufficient", minkowski);
    let conclusion = match (holds, minkowski) {
        (true, true) => "locally Minkowskian (A is x-free)",
        (true, false) => LOCALLY_MINKOWSKI_UNPROVEN,
        (false, _) => "characterization not satisfied",
    };
    report.push_fact("conclusion", conclusion);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse;
    use crate::finsler::{MthRootMetric, OneForm};

    fn inst(m: u32, a: &str, beta: &str) -> KropinaInstance {
        let metric = MthRootMetric::new(2, m, parse(a, 2).unwrap()).unwrap();
        let beta = OneForm::from_polynomial(&parse(beta, 2).unwrap()).unwrap();
        KropinaInstance::new(metric, beta).unwrap()
    }

    #[test]
    fn minkowski_holds_everywhere() {
        let i = inst(3, "y1^3 + y1*y2^2 + y2^3", "y1");
        let r = check_theorem1(&i).unwrap();
        assert_eq!(r.overall, Status::Holds, "{r}");
        assert_eq!(r.fact("agrees with direct verdict"), Some("true"));
        let p = check_prop31(&i).unwrap();
        assert_eq!(p.overall, Status::Holds, "{p}");
        assert_eq!(p.fact("minkowski_sufficient"), Some("true"));
    }

    #[test]
    fn variable_beta_fails_beta_and_mixed() {
        let i = inst(3, "y1^3 + y1*y2^2 + y2^3", "(1+x1)*y1");
        let r = check_theorem1(&i).unwrap();
        assert_eq!(r.overall, Status::Fails);
        assert!(r.condition("beta_condition").unwrap().verdict.fails());
        assert!(r.condition("mixed_condition").unwrap().verdict.fails());
        assert_eq!(r.fact("direct verdict"), Some("Fails"));
    }

    #[test]
    fn perturbed_theta_fails_with_remainder() {
        let i = inst(3, "(1+x1)*y1^3 + y1*y2^2 + y2^3", "y1");
        let r = check_theorem1(&i).unwrap();
        let theta = &r.condition("theta_condition").unwrap().verdict;
        assert!(theta.fails());
        let p = check_prop31(&i).unwrap();
        assert_eq!(p.overall, Status::Fails);
    }

    #[test]
    fn conformal_prop31_bracket() {
        let i = inst(3, "(1+x1)*(y1^3 + y1*y2^2 + y2^3)", "y1");
        let p = check_prop31(&i).unwrap();
        let w = &p.condition("hamel_bracket").unwrap().verdict.witnesses()[0];
        assert_eq!(
            w.polynomial,
            parse(
                "(1+x1)*(y1^3 + y1*y2^2 + y2^3)*(3*y1^3 - y1*y2^2 - 3*y2^3)",
                2
            )
            .unwrap()
        );
    }

    #[test]
    fn order_two_rejected() {
        let i = inst(2, "y1^2 + y2^2", "y1");
        assert!(matches!(
            check_theorem1(&i),
            Err(KropinaError::RootOrderTooSmall { m: 2 })
        ));
    }
}
