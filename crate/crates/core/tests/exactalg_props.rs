mod common;

use std::f64::consts::TAU;

use common::ctx;
use ks_core::exactalg::{cyclotomic_difference, resultant, smith_normal_form, GroupElement, IntMatrix};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

/// `∏_{ζ^q = 1} |f(ζ)|`, which equals `|Res(f, x^q − 1)|`.
fn product_over_roots_of_unity(f: &[i64], q: usize) -> f64 {
    (0..q)
        .map(|k| {
            let z = Complex64::from_polar(1.0, TAU * k as f64 / q as f64);
            f.iter().rev().fold(Complex64::zero(), |acc, &c| acc * z + c as f64).norm()
        })
        .product()
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    match m.len() {
        0 => BigInt::from(1),
        1 => m[0][0].clone(),
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<BigInt>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
                let sign = if j % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
                sign * &m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|s| s.count_ones() as usize == k).map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect()).collect()
}

/// Invariant factors as ratios of determinantal divisors (gcd of all k×k minors).
fn invariant_factors_by_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let (r, c) = (m.len(), m[0].len());
    let mut divisors = vec![BigInt::from(1)];
    for k in 1..=r.min(c) {
        let mut g = BigInt::zero();
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let sub: Vec<Vec<BigInt>> =
                    rows.iter().map(|&i| cols.iter().map(|&j| BigInt::from(m[i][j])).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        divisors.push(g);
    }
    let mut out = Vec::new();
    for k in 1..divisors.len() {
        if divisors[k].is_zero() {
            out.push(BigInt::zero());
        } else {
            out.push(&divisors[k] / &divisors[k - 1]);
        }
    }
    out
}

fn nonzero_coeffs(max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
    (1..=max_deg).prop_flat_map(|d| {
        (prop::collection::vec(-5i64..=5, d), prop_oneof![1i64..=4, -4i64..=-1])
            .prop_map(|(mut low, lead)| {
                low.push(lead);
                low
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn resultant_matches_roots_of_unity(f in nonzero_coeffs(3), q in 1usize..=12) {
        let exact = resultant(&big(&f), &cyclotomic_difference(q)).abs().to_f64().unwrap();
        let numeric = product_over_roots_of_unity(&f, q);
        prop_assert!((exact - numeric).abs() <= 1e-6 * exact.max(1.0), "{exact} vs {numeric}");
    }

    #[test]
    fn resultant_swap_sign(f in nonzero_coeffs(3), g in nonzero_coeffs(3)) {
        let (df, dg) = (f.len() - 1, g.len() - 1);
        let sign = if (df * dg) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(resultant(&big(&f), &big(&g)), resultant(&big(&g), &big(&f)) * sign);
    }

    #[test]
    fn smith_form_matches_minors(entries in prop::collection::vec(-9i64..=9, 9)) {
        let rows: Vec<Vec<i64>> = entries.chunks(3).map(|r| r.to_vec()).collect();
        let m = IntMatrix::from_rows(&rows);
        let snf = smith_normal_form(&m);
        prop_assert!(snf.s.is_diagonal());
        let factors = snf.invariant_factors();
        prop_assert_eq!(&factors, &invariant_factors_by_minors(&rows));
        for w in factors.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
        prop_assert_eq!(snf.u.det().abs(), BigInt::from(1));
        prop_assert_eq!(snf.v.det().abs(), BigInt::from(1));
    }
}

#[test]
fn group_axioms() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for c in common::CORPUS {
        let context = ctx(c);
        let e = GroupElement::identity(&context);
        for _ in 0..200 {
            let g = common::random_element(&mut rng, &context, 6);
            let h = common::random_element(&mut rng, &context, 6);
            let k = common::random_element(&mut rng, &context, 6);
            let left = g.compose(&h).unwrap().compose(&k).unwrap();
            let right = g.compose(&h.compose(&k).unwrap()).unwrap();
            assert_eq!(left, right);
            assert_eq!(g.compose(&e).unwrap(), g);
            assert_eq!(e.compose(&g).unwrap(), g);
            assert!(g.compose(&g.inverse()).unwrap().is_identity());
        }
    }
}
