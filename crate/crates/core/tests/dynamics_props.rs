mod common;

use std::collections::BTreeSet;

use common::{param, poly, CORPUS};
use ks_core::dynamics::{
    divisors, entropy, entropy_growth_check, enumerate_characters, fixed_count, least_period_count, mobius,
    DEFAULT_ROOT_TOL,
};
use ks_core::exactalg::IntPolynomial;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

/// Irreducible corpus-like polynomials with a positive root other than 1.
fn parameter_polynomial() -> impl Strategy<Value = IntPolynomial> {
    prop_oneof![
        (2i64..=7).prop_map(|m| poly(&[-m, 1])),
        (2i64..=7).prop_map(|l| poly(&[-1, l])),
        (2i64..=7, 1i64..=7).prop_filter_map("not coprime or a = 1", |(m, l)| {
            IntPolynomial::from_i64(&[-m, l]).ok()
        }),
        (1i64..=4, 1i64..=3).prop_filter_map("reducible", |(b, c)| IntPolynomial::from_i64(&[-c, -b, 1]).ok()),
    ]
}

#[test]
fn enumeration_is_shift_closed() {
    for c in CORPUS {
        let q_poly = poly(c);
        for q in 1..=6 {
            let chars = enumerate_characters(&q_poly, q).unwrap();
            let keys: BTreeSet<String> = chars.iter().map(|c| format!("{:?}", c.angles())).collect();
            assert_eq!(keys.len(), chars.len(), "{q_poly} q={q}: duplicates");
            for chi in &chars {
                assert!(chi.satisfies_recursion(&q_poly));
                assert!(keys.contains(&format!("{:?}", chi.shift().angles())), "{q_poly} q={q}: shift escapes");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mobius_inversion(q_poly in parameter_polynomial(), q in 1usize..=16) {
        let mut sum = BigInt::zero();
        for e in divisors(q) {
            sum += least_period_count(&q_poly, e).unwrap();
        }
        prop_assert_eq!(sum, fixed_count(&q_poly, q).unwrap());
        // Σ_{e | q} μ(e) = [q = 1]
        let total: i64 = divisors(q).into_iter().map(mobius).sum();
        prop_assert_eq!(total, i64::from(q == 1));
    }

    #[test]
    fn reciprocal_invariance(q_poly in parameter_polynomial(), q in 1usize..=12) {
        prop_assert_eq!(fixed_count(&q_poly, q).unwrap(), fixed_count(&q_poly.reciprocal(), q).unwrap());
    }

    #[test]
    fn least_period_counts_divisible_by_period(q_poly in parameter_polynomial(), q in 1usize..=14) {
        let n = least_period_count(&q_poly, q).unwrap();
        prop_assert!((n % BigInt::from(q)).is_zero());
    }

    #[test]
    fn entropy_reciprocal(q_poly in parameter_polynomial()) {
        let a = entropy(&ks_core::exactalg::Parameter::Algebraic(q_poly.clone()), DEFAULT_ROOT_TOL).unwrap();
        let b = entropy(&ks_core::exactalg::Parameter::Algebraic(q_poly.reciprocal()), DEFAULT_ROOT_TOL).unwrap();
        prop_assert!((a.value - b.value).abs() <= 1e-9 + a.error_bound + b.error_bound);
    }
}

#[test]
fn growth_rate_converges() {
    for c in CORPUS {
        let h = entropy(&param(c), DEFAULT_ROOT_TOL).unwrap().value;
        let rows = entropy_growth_check(&poly(c), 20).unwrap();
        let gap = |q: usize| (rows[q - 1].rate - h).abs();
        assert!(gap(20) <= gap(10) + 1e-12, "{:?}: {} > {}", c, gap(20), gap(10));
        // |log c_q − q·h| stays bounded
        for row in &rows {
            assert!(row.q as f64 * (row.rate - h).abs() <= 1.0, "{:?} q={}", c, row.q);
        }
    }
}
