use kropina::algebra::rational::{int, rat};
use kropina::algebra::{exact_divide, CoeffField, Division, MultiPoly, Rational};
use kropina::finsler::{MthRootMetric, OneForm};
use kropina::kropina::{
    bracket_identity_holds, check_dually_flat, check_projectively_flat, check_prop31,
    check_theorem1, condition_brackets, contraction_probes, dually_flat_residual_expanded,
    dually_flat_residuals, hamel_bracket, hamel_residual_expanded, hamel_residuals,
    numeric_crosscheck, probe_constants, residuals_by_chain_rule, sample_admissible_points,
    KropinaInstance, ResidualKind, DEFAULT_STEP,
};
use kropina::random::InstanceGenerator;
use kropina::report::Status;
use proptest::prelude::*;

fn x_free_positive(seed: u64) -> KropinaInstance {
    let mut g = InstanceGenerator::new(seed);
    let inst = g.positive_instance();
    let n = inst.n();
    let origin = vec![Rational::from_integer(0.into()); n];
    let a = inst.a().substitute_x(&origin);
    let beta = inst.beta().substitute_x(&origin);
    KropinaInstance::new(
        MthRootMetric::new(n, inst.m(), a).unwrap(),
        OneForm::from_polynomial(&beta).unwrap(),
    )
    .unwrap()
}

fn max_numeric_residual(inst: &KropinaInstance, kind: ResidualKind, seed: u64) -> f64 {
    sample_admissible_points(inst, 20, seed)
        .unwrap()
        .iter()
        .flat_map(|p| {
            numeric_crosscheck(inst, kind, p, DEFAULT_STEP)
                .unwrap()
                .components
                .into_iter()
                .map(|c| c.numeric.abs())
        })
        .fold(0.0, f64::max)
}

#[test]
fn dual_path_equality_on_fifty_instances() {
    let mut g = InstanceGenerator::new(50);
    for _ in 0..50 {
        let inst = g.instance();
        let chain = residuals_by_chain_rule(&inst, ResidualKind::DuallyFlat).unwrap();
        let hamel = residuals_by_chain_rule(&inst, ResidualKind::Hamel).unwrap();
        for l in 0..inst.n() {
            assert_eq!(chain[l], dually_flat_residual_expanded(&inst, l).unwrap());
            assert_eq!(hamel[l], hamel_residual_expanded(&inst, l).unwrap());
        }
    }
}

/// Re-derives the probe constants by exact division on instances with
/// `A·A_0 ≠ 0` and compares them with the coefficient-table values.
#[test]
fn probe_constants_by_symbolic_division() {
    let mut g = InstanceGenerator::new(3);
    let mut seen = std::collections::BTreeSet::new();
    while seen.len() < 3 {
        let inst = g.instance();
        let a_a0 = inst.a() * &inst.derived().a_0;
        if a_a0.is_zero() {
            continue;
        }
        let n = inst.n();
        let c1: Vec<MultiPoly> = (0..n)
            .map(|l| condition_brackets(&inst, l).unwrap().c1)
            .collect();
        let t: Vec<MultiPoly> = (0..n).map(|l| hamel_bracket(&inst, l).unwrap()).collect();
        let mut derived = Vec::new();
        for lhs in [MultiPoly::contract_y(&c1), MultiPoly::contract_y(&t)] {
            match exact_divide(&lhs, &a_a0, CoeffField::Rationals).unwrap() {
                Division::Exact(q) => derived.push(q.num.as_constant().expect("constant ratio")),
                Division::NotDivisible { .. } => panic!("probe is not proportional to A A_0"),
            }
        }
        let k = probe_constants(inst.m());
        assert_eq!(derived, vec![k.c1.clone(), k.hamel.clone()]);
        assert_eq!(k.c1, int(2 * i64::from(inst.m())));
        assert_eq!(k.hamel, int(i64::from(inst.m())));
        seen.insert(inst.m());
    }
}

#[test]
fn probes_hold_on_hundred_instances() {
    let mut g = InstanceGenerator::new(100);
    for _ in 0..100 {
        let inst = g.instance();
        let r = contraction_probes(&inst);
        assert_eq!(r.overall, Status::Holds, "{r}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bracket_identity(seed in any::<u64>()) {
        let inst = InstanceGenerator::new(seed).instance();
        for l in 0..inst.n() {
            prop_assert!(bracket_identity_holds(&inst, l).unwrap());
        }
    }

    #[test]
    fn scaling_beta_scales_residuals_quadratically(seed in any::<u64>(), p in 1i64..=5, q in 1i64..=4, neg in any::<bool>()) {
        let inst = InstanceGenerator::new(seed).instance();
        let c = if neg { rat(-p, q) } else { rat(p, q) };
        let scaled = KropinaInstance::new(inst.metric().clone(), inst.one_form().scale(&c)).unwrap();
        let c2 = &c * &c;
        let r = dually_flat_residuals(&inst).unwrap();
        let rs = dually_flat_residuals(&scaled).unwrap();
        let h = hamel_residuals(&inst).unwrap();
        let hs = hamel_residuals(&scaled).unwrap();
        for l in 0..inst.n() {
            prop_assert_eq!(&rs[l], &r[l].scale(&c2));
            prop_assert_eq!(&hs[l], &h[l].scale(&c2));
        }
        prop_assert_eq!(check_dually_flat(&inst).unwrap().status(), check_dually_flat(&scaled).unwrap().status());
        prop_assert_eq!(
            check_projectively_flat(&inst).unwrap().status(),
            check_projectively_flat(&scaled).unwrap().status()
        );
    }

    #[test]
    fn minkowski_family_holds_everywhere(seed in any::<u64>()) {
        let inst = InstanceGenerator::new(seed).x_free_instance();
        prop_assert!(check_dually_flat(&inst).unwrap().holds());
        prop_assert!(check_projectively_flat(&inst).unwrap().holds());
        let t = check_theorem1(&inst).unwrap();
        prop_assert_eq!(t.overall, Status::Holds, "{}", t);
        let p = check_prop31(&inst).unwrap();
        prop_assert_eq!(p.overall, Status::Holds, "{}", p);
        prop_assert_eq!(p.fact("minkowski_sufficient"), Some("true"));
    }

    #[test]
    fn vanishing_brackets_force_a0_zero(seed in any::<u64>()) {
        let mut g = InstanceGenerator::new(seed);
        for inst in [g.instance(), g.x_free_instance()] {
            let report = check_theorem1(&inst).unwrap();
            let all_zero = (0..inst.n()).all(|l| {
                let b = condition_brackets(&inst, l).unwrap();
                b.c1.is_zero() && b.c2.is_zero() && b.c3.is_zero()
            });
            if all_zero {
                prop_assert!(inst.derived().a_0.is_zero());
                prop_assert_eq!(report.fact("A_0 = 0 (forced by the probe)"), Some("true"));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn zero_equivalence(seed in any::<u64>(), x_free in any::<bool>()) {
        let inst = if x_free {
            x_free_positive(seed)
        } else {
            InstanceGenerator::new(seed).positive_instance()
        };
        for (kind, verdict) in [
            (ResidualKind::DuallyFlat, check_dually_flat(&inst).unwrap()),
            (ResidualKind::Hamel, check_projectively_flat(&inst).unwrap()),
        ] {
            let residuals = match kind {
                ResidualKind::DuallyFlat => dually_flat_residuals(&inst).unwrap(),
                ResidualKind::Hamel => hamel_residuals(&inst).unwrap(),
            };
            let all_zero = residuals.iter().all(MultiPoly::is_zero);
            let numeric_zero = max_numeric_residual(&inst, kind, seed) <= 1e-6;
            prop_assert_eq!(verdict.holds(), all_zero);
            prop_assert_eq!(all_zero, numeric_zero);
        }
    }
}
