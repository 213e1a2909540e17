//! Property tests for q-integers and Gaussian polynomials.

use num_bigint::BigInt;
use proptest::prelude::*;
use qbraid::qcomb::{
    gauss_expand, gaussian_polynomial, q_binomial, q_binomial_recursive, q_factorial, q_int, q_power_ratio,
    q_triangular_power, triangle_row, verify_identity, Identity, QContext, Recursion,
};
use qbraid::{FieldContext, Scalar};

fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

#[test]
fn binomial_routes_agree_symbolically() {
    let ctx = QContext::symbolic();
    for n in 0..=10 {
        for k in 0..=n as i64 {
            let direct = q_binomial(n, k, &ctx).unwrap();
            assert_eq!(
                direct,
                q_binomial_recursive(n, k, &ctx, Recursion::First),
                "first recursion C_{n}^{k}"
            );
            assert_eq!(
                direct,
                q_binomial_recursive(n, k, &ctx, Recursion::Second),
                "second recursion C_{n}^{k}"
            );
            assert_eq!(direct, q_binomial(n, n as i64 - k, &ctx).unwrap(), "symmetry C_{n}^{k}");
            // Quotient of q-factorials as an independent oracle.
            let quotient =
                &q_factorial(n, &ctx) / &(&q_factorial(k as usize, &ctx) * &q_factorial(n - k as usize, &ctx));
            assert_eq!(direct, quotient);
        }
        assert_eq!(triangle_row(n, &ctx).unwrap().entries.len(), n + 1);
    }
}

#[test]
fn specialization_to_classical_binomials() {
    let one = QContext::rational(1, 1).unwrap();
    for n in 0..=12u64 {
        for k in 0..=n {
            let c = factorial(n) / (factorial(k) * factorial(n - k));
            let coeffs = gaussian_polynomial(n as usize, k as i64).unwrap();
            assert_eq!(coeffs.iter().sum::<BigInt>(), c);
            let v = q_binomial(n as usize, k as i64, &one).unwrap();
            assert_eq!(
                v,
                Scalar::from_rational(num_rational::BigRational::from_integer(c), FieldContext::RATIONAL)
            );
        }
    }
}

#[test]
fn gauss_expansion_coefficients() {
    let ctx = QContext::symbolic();
    for k in 0..=10 {
        let coeffs = gauss_expand(k, &ctx);
        for (r, c) in coeffs.iter().enumerate() {
            let expected = &q_triangular_power(r as i64, &ctx) * &q_binomial(k, r as i64, &ctx).unwrap();
            assert_eq!(c, &expected, "k={k}, r={r}");
        }
    }
}

#[test]
fn identities_symbolic() {
    let ctx = QContext::symbolic();
    for n in 0..=10 {
        for id in [Identity::Bin1q, Identity::Bin2q, Identity::QSymmetry] {
            let r = verify_identity(id, n, &ctx).unwrap();
            assert!(r.pass, "{} at n={n}: {:?}", id.name(), r.first_failure);
        }
    }
}

proptest! {
    #[test]
    fn specialization_commutes_with_construction(n in 0usize..=8, k in 0i64..=8, num in -7i64..=7, den in 1i64..=4) {
        prop_assume!(num != 0 && k <= n as i64);
        let q0 = Scalar::from_ratio(num, den, FieldContext::RATIONAL);
        let concrete = QContext::new(q0.clone()).unwrap();
        let symbolic = q_binomial(n, k, &QContext::symbolic()).unwrap();
        prop_assert_eq!(symbolic.evaluate(&q0).unwrap(), q_binomial(n, k, &concrete).unwrap());
        prop_assert_eq!(q_binomial_recursive(n, k, &concrete, Recursion::First), q_binomial(n, k, &concrete).unwrap());
    }

    #[test]
    fn q_integers_sum_powers(n in 0usize..=12, num in 1i64..=5, den in 1i64..=5) {
        let ctx = QContext::rational(num, den).unwrap();
        let sum = (0..n as i64).fold(ctx.zero(), |acc, i| &acc + &ctx.q_pow(i));
        prop_assert_eq!(q_int(n, &ctx), sum);
    }

    #[test]
    fn power_ratio_closed_form(n in 0i64..=9, r in 0i64..=9) {
        prop_assume!(r <= n);
        let ctx = QContext::symbolic();
        prop_assert_eq!(q_power_ratio(r, n, &ctx).unwrap(), ctx.q_pow(-(n - r) * r));
    }
}
