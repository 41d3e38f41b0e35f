use kropina::algebra::rational::{int, rat};
use kropina::algebra::{
    exact_divide, parse, Block, CoeffField, Division, Homogeneity, Monomial, MultiPoly, PowerExpr,
    Rational,
};
use kropina::kropina::sample_admissible_points;
use kropina::random::InstanceGenerator;
use proptest::prelude::*;

const N: usize = 2;

fn poly_strategy(max_terms: usize, max_deg: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(
        (
            prop::collection::vec(0..=max_deg, N),
            prop::collection::vec(0..=max_deg, N),
            -9i64..=9,
            1i64..=4,
        ),
        0..=max_terms,
    )
    .prop_map(|terms| {
        MultiPoly::from_terms(
            N,
            terms
                .into_iter()
                .map(|(x, y, p, q)| (Monomial::new(x, y), rat(p, q))),
        )
    })
}

fn nonzero_poly(max_terms: usize, max_deg: u32) -> impl Strategy<Value = MultiPoly> {
    poly_strategy(max_terms, max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in poly_strategy(5, 3), q in poly_strategy(5, 3), r in poly_strategy(4, 2)) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) - &q, p.clone());
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn canonical_form_has_no_zero_terms(p in poly_strategy(6, 3), q in poly_strategy(6, 3)) {
        let s = &(&p * &q) - &q;
        prop_assert!(s.terms().all(|(_, c)| *c != Rational::from_integer(0.into())));
    }

    #[test]
    fn partials_commute(p in poly_strategy(6, 3), i in 0..N, j in 0..N) {
        prop_assert_eq!(p.partial_x(i).partial_y(j), p.partial_y(j).partial_x(i));
        prop_assert_eq!(p.partial_x(i).partial_x(j), p.partial_x(j).partial_x(i));
    }

    #[test]
    fn leibniz_rule(p in poly_strategy(4, 3), q in poly_strategy(4, 3), i in 0..N) {
        let lhs = (&p * &q).partial_y(i);
        let rhs = &p.partial_y(i) * &q + &p * &q.partial_y(i);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_identity_on_homogeneous(seed in any::<u64>(), d in 1u32..=5) {
        let mut g = InstanceGenerator::new(seed);
        let p = g.homogeneous(N, d, 2);
        prop_assert_eq!(p.homogeneous_y_degree().unwrap(), Homogeneity::Degree(d));
        prop_assert_eq!(p.euler_contract_y(), p.scale_int(i64::from(d)));
    }

    #[test]
    fn division_of_products_is_exact(p in nonzero_poly(4, 2), q in nonzero_poly(3, 2)) {
        let prod = &p * &q;
        for field in [CoeffField::Rationals, CoeffField::RationalFunctionsInX] {
            match exact_divide(&prod, &q, field).unwrap() {
                Division::Exact(quot) => prop_assert!(quot.verify(&prod, &q)),
                Division::NotDivisible { .. } => prop_assert!(false, "product not divisible"),
            }
        }
        let over_q = exact_divide(&prod, &q, CoeffField::Rationals).unwrap();
        prop_assert_eq!(&over_q.quotient().unwrap().num, &p);
    }

    #[test]
    fn division_verdicts_are_sound(p in nonzero_poly(5, 3), q in nonzero_poly(3, 2)) {
        for field in [CoeffField::Rationals, CoeffField::RationalFunctionsInX] {
            match exact_divide(&p, &q, field).unwrap() {
                Division::Exact(quot) => prop_assert!(quot.verify(&p, &q)),
                Division::NotDivisible { remainder } => prop_assert!(!remainder.is_zero()),
            }
        }
    }

    #[test]
    fn parse_print_round_trip(p in poly_strategy(8, 4)) {
        prop_assert_eq!(parse(&p.to_string(), N).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn power_expr_diff_matches_finite_differences(
        seed in any::<u64>(),
        k in -6i64..=6,
        s in -3i64..=2,
        wrt_y in any::<bool>(),
    ) {
        let mut g = InstanceGenerator::new(seed);
        let inst = g.positive_instance();
        let n = inst.n();
        let m = inst.m();
        let coeff = MultiPoly::constant(n, int(1)) + MultiPoly::x(n, 0).scale(&rat(1, 3))
            + MultiPoly::y(n, n - 1).scale(&rat(1, 2));
        let e = PowerExpr::single(
            m,
            inst.a().clone(),
            inst.beta().clone(),
            coeff,
            &rat(k, i64::from(m)),
            s,
        ).unwrap();
        let point = &sample_admissible_points(&inst, 1, seed).unwrap()[0];
        let x = point.x_f64();
        let y = point.y_f64();
        let h = 1e-4;
        for i in 0..n {
            let (block, mut xp, mut xm, mut yp, mut ym) =
                (if wrt_y { Block::Y } else { Block::X }, x.clone(), x.clone(), y.clone(), y.clone());
            if wrt_y {
                yp[i] += h;
                ym[i] -= h;
            } else {
                xp[i] += h;
                xm[i] -= h;
            }
            let fd = (e.evaluate_f64(&xp, &yp) - e.evaluate_f64(&xm, &ym)) / (2.0 * h);
            let exact = e.diff(block, i).unwrap().evaluate_f64(&x, &y);
            let rel = (fd - exact).abs() / exact.abs().max(1.0);
            prop_assert!(rel <= 1e-6, "rel {rel} fd {fd} exact {exact}");
        }
    }
}
