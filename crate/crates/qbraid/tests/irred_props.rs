//! Property tests for the irreducibility layer.

use proptest::prelude::*;
use qbraid::irred::{
    analyze, burnside_dimension, commutant, commutant_dimension, d0_determinant, d0_starred, d0_starred_check,
    fixed_vector_check, intertwiner_space, minor_criterion, suspected_catalog, MinorOutcome, Verdict,
};
use qbraid::qcomb::QContext;
use qbraid::rep::{build_representation, RepSpec};
use qbraid::{FieldContext, Scalar};

const Q: FieldContext = FieldContext::RATIONAL;

fn nonzero() -> impl Strategy<Value = Scalar> {
    (1i64..=9, 1i64..=5, any::<bool>()).prop_map(|(n, d, neg)| Scalar::from_ratio(if neg { -n } else { n }, d, Q))
}

/// Λ with λₙ = λ₀ and λ_k λ_{n−k} = λ₀², the middle entry ±λ₀.
fn starred_lambda(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    (prop::collection::vec(nonzero(), n + 1), any::<bool>()).prop_map(move |(v, plus)| {
        let l0 = v[0].clone();
        let sq = &l0 * &l0;
        let mut l = vec![Scalar::zero(Q); n + 1];
        for k in 1..n.div_ceil(2) {
            l[n - k] = &sq / &v[k];
            l[k] = v[k].clone();
        }
        if n.is_multiple_of(2) && n > 0 {
            l[n / 2] = if plus { l0.clone() } else { -&l0 };
        }
        l[n] = l0.clone();
        l[0] = l0;
        l
    })
}

fn q1() -> QContext {
    QContext::rational(1, 1).unwrap()
}

fn minors_all_witnessed(spec: &RepSpec) -> bool {
    (0..=spec.n / 2).all(|r| matches!(minor_criterion(spec, r), Ok(MinorOutcome::Witness { .. })))
}

#[test]
fn minor_criterion_matches_commutant_symbolically() {
    for n in 1..=4 {
        let spec = RepSpec::unit(n, &QContext::symbolic());
        let rep = build_representation(&spec).unwrap();
        assert_eq!(
            minors_all_witnessed(&spec),
            commutant_dimension(&rep).unwrap() == 1,
            "n={n}"
        );
    }
}

#[test]
fn catalog_points_are_degenerate() {
    for n in 2..=4 {
        for entry in suspected_catalog(n).unwrap() {
            let rep = build_representation(&entry.spec().unwrap()).unwrap();
            let field = rep.spec.field();
            let v: Vec<Scalar> = (0..=n)
                .map(|k| Scalar::from_int(if k == 0 || k == n { 2 } else { 1 }, field))
                .collect();
            let fixed = entry.s == 2 && fixed_vector_check(&rep, &v).unwrap().pass;
            let c = commutant(&rep).unwrap();
            assert!(fixed || c.dimension >= 2, "n={n}, s={}, sign={}", entry.s, entry.sign);
            for b in &c.basis {
                assert_eq!(b * &rep.sigma1, &rep.sigma1 * b);
                assert_eq!(b * &rep.sigma2, &rep.sigma2 * b);
            }
        }
    }
}

/// Direct value of D_5^(0) at λ = (1, a, b, 1/b, 1/a, 1), from an
/// independent symbolic expansion of the 5×5 minor.
fn d5_reference(a: &Scalar, b: &Scalar) -> Scalar {
    let i = |n: i64| Scalar::from_int(n, Q);
    let (a2, b2, ab) = (a * a, b * b, a * b);
    let poly = [
        &i(3) * &(&a2 * &b2),
        &i(4) * &(&a2 * b),
        &i(8) * &a2,
        &i(9) * &(a * &b2),
        &i(12) * &ab,
        &i(9) * a,
        &i(8) * &b2,
        &i(4) * b,
        i(3),
    ]
    .iter()
    .fold(i(0), |acc, t| &acc + t);
    &(&i(2) * &poly) / &ab
}

#[test]
fn d5_starred_form_differs_from_minor() {
    let r = |n, d| Scalar::from_ratio(n, d, Q);
    for (a, b) in [(r(2, 1), r(3, 1)), (r(-1, 2), r(5, 3)), (r(7, 1), r(-2, 1))] {
        let l = vec![
            r(1, 1),
            a.clone(),
            b.clone(),
            b.inv().unwrap(),
            a.inv().unwrap(),
            r(1, 1),
        ];
        assert_eq!(d0_determinant(5, &l).unwrap(), d5_reference(&a, &b));
        assert!(!d0_starred_check(5, &l).unwrap().pass);
    }
    // The two agree on the one-parameter slice a = b = 1.
    let ones = vec![r(1, 1); 6];
    assert_eq!(d0_determinant(5, &ones).unwrap(), d0_starred(5, &ones).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn minor_criterion_matches_commutant_at_q1(
        (n, l) in (1usize..=4).prop_flat_map(|n| (Just(n), starred_lambda(n))),
    ) {
        let spec = RepSpec::raw(n, &q1(), &l).unwrap();
        let rep = build_representation(&spec).unwrap();
        let report = analyze(&rep).unwrap();
        prop_assume!(report.verdict != Verdict::Inconclusive);
        prop_assert_eq!(minors_all_witnessed(&spec), report.commutant_dim == 1);
    }

    #[test]
    fn commutant_elements_commute((n, l) in (1usize..=3).prop_flat_map(|n| (Just(n), starred_lambda(n)))) {
        let rep = build_representation(&RepSpec::raw(n, &q1(), &l).unwrap()).unwrap();
        let c = commutant(&rep).unwrap();
        prop_assert!(c.dimension >= 1);
        for b in &c.basis {
            prop_assert_eq!(b * &rep.sigma1, &rep.sigma1 * b);
            prop_assert_eq!(b * &rep.sigma2, &rep.sigma2 * b);
        }
        if burnside_dimension(&rep).unwrap() == (n + 1) * (n + 1) {
            prop_assert_eq!(c.dimension, 1);
        }
    }

    #[test]
    fn starred_form_holds_below_five((n, l) in (2usize..=4).prop_flat_map(|n| (Just(n), starred_lambda(n)))) {
        let r = d0_starred_check(n, &l).unwrap();
        prop_assert!(r.pass, "direct {} vs closed {}", r.direct, r.closed_form);
    }

    #[test]
    fn inequivalent_q_have_no_intertwiner(a in 1i64..=6, b in 1i64..=6, c in 1i64..=6, d in 1i64..=6) {
        let (qa, qb) = (Scalar::from_ratio(a, b, Q), Scalar::from_ratio(c, d, Q));
        prop_assume!(qa != qb && qa != -&qb && !(&qa * &qb).is_one());
        for n in [2usize, 3] {
            let ra = build_representation(&RepSpec::unit(n, &QContext::new(qa.clone()).unwrap())).unwrap();
            let rb = build_representation(&RepSpec::unit(n, &QContext::new(qb.clone()).unwrap())).unwrap();
            prop_assert_eq!(intertwiner_space(&ra, &rb).unwrap().dimension, 0);
        }
    }
}
