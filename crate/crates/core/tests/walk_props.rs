mod common;

use common::ctx;
use ks_core::exactalg::Context;
use ks_core::walk::{exact_distribution, mc_return, return_probabilities, StepLaw};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mass_and_symmetry(which in 0usize..5, t in 0usize..=7, lazy in any::<bool>()) {
        let law = if lazy { StepLaw::LAZY } else { StepLaw::SIMPLE };
        let d = exact_distribution(&ctx(common::CORPUS[which]), t, law).unwrap();
        prop_assert_eq!(d.total_mass(), BigRational::one());
        prop_assert!(d.is_symmetric());
    }
}

#[test]
fn lazy_walk_decays_monotonically() {
    for context in [ctx(&[-2, 1]), ctx(&[-3, 1]), ctx(&[-1, -1, 1]), Context::transcendental(), Context::z2_control()] {
        let p = return_probabilities(&context, 10, StepLaw::LAZY).unwrap();
        assert!(p.windows(2).all(|w| w[1] <= w[0]));
    }
}

/// A closed walk followed by a closed walk is closed: `p_{s+t}(e) ≥ p_s(e)·p_t(e)`.
#[test]
fn returns_supermultiplicative() {
    let p = return_probabilities(&ctx(&[-2, 1]), 12, StepLaw::SIMPLE).unwrap();
    for s in 0..=12 {
        for t in 0..=12 - s {
            assert!(p[s + t] >= &p[s] * &p[t], "s={s} t={t}");
        }
    }
}

#[test]
fn monte_carlo_seed_batch() {
    let context = ctx(&[-2, 1]);
    let exact = return_probabilities(&context, 8, StepLaw::SIMPLE).unwrap();
    for (t, p) in exact.iter().enumerate().skip(1) {
        let p = p.to_f64().unwrap();
        let sigma = (p * (1.0 - p) / 50_000.0).sqrt();
        let within = (0..20u64)
            .filter(|&seed| {
                let e = mc_return(&context, t, 50_000, seed, StepLaw::SIMPLE).unwrap();
                (e.estimate - p).abs() <= 3.0 * sigma
            })
            .count();
        assert!(within >= 19, "t={t}: {within}/20 seeds within 3 sigma");
    }
}
