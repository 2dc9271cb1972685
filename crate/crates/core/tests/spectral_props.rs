mod common;

use common::{ctx, param, random_element};
use ks_core::exactalg::GroupElement;
use ks_core::repr::{build_family, default_x_schedule};
use ks_core::spectral::{
    commutator_norm, dirac_commuting, dirac_mixed, summability_report, DiracMode, DiracSpec, Verdict,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rank(v: Verdict) -> u8 {
    match v {
        Verdict::DivergentEvidence => 0,
        Verdict::Inconclusive => 1,
        Verdict::CertifiedSummable => 2,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn commutators_ignore_offsets(delta in -50.0f64..50.0, word in "[uUvV]{1,10}") {
        let context = ctx(&[-2, 1]);
        let family = build_family(&context, 6, &default_x_schedule()).unwrap();
        let g = GroupElement::word(&context, &word).unwrap();
        let spec = dirac_mixed(context.param(), 3.0, 6).unwrap();
        let a = commutator_norm(&spec, &family, &g).unwrap();
        let b = commutator_norm(&spec.shifted(delta), &family, &g).unwrap();
        prop_assert_eq!(a.per_block, b.per_block);
    }

    /// Raising the test exponent never makes the verdict worse.
    #[test]
    fn verdict_monotone_in_exponent(p in 1.0f64..4.0, lo in 0.05f64..3.0, step in 0.0f64..3.0, which in 0usize..5) {
        let spec = dirac_commuting(&param(common::CORPUS[which]), p, 10).unwrap();
        let a = summability_report(&spec, lo).unwrap();
        let b = summability_report(&spec, lo + step).unwrap();
        prop_assert!(rank(b.verdict) >= rank(a.verdict), "{:?} at {lo} then {:?} at {}", a.verdict, b.verdict, lo + step);
        prop_assert!(b.total <= a.total * (1.0 + 1e-12));
    }
}

#[test]
fn commuting_spec_commutes() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for c in common::CORPUS {
        let context = ctx(c);
        let family = build_family(&context, 6, &default_x_schedule()).unwrap();
        let spec = DiracSpec::aligned_to(&family, 1.5, DiracMode::Commuting).unwrap();
        for _ in 0..100 {
            let g = random_element(&mut rng, &context, 12);
            assert_eq!(commutator_norm(&spec, &family, &g).unwrap().supremum, 0.0);
        }
        assert_eq!(summability_report(&spec, 1.5).unwrap().verdict, Verdict::CertifiedSummable);
    }
}

#[test]
fn mixed_spec_commutes_with_translations() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for c in common::CORPUS {
        let context = ctx(c);
        let family = build_family(&context, 6, &default_x_schedule()).unwrap();
        let spec = dirac_mixed(context.param(), 2.0, 6).unwrap();
        let v = GroupElement::v(&context);
        for k in -5..=5 {
            assert_eq!(commutator_norm(&spec, &family, &v.pow(k)).unwrap().supremum, 0.0);
        }
        // any l = 0 element is diagonal
        for _ in 0..50 {
            let g = random_element(&mut rng, &context, 12);
            let g = g.compose(&GroupElement::u(&context).pow(-g.l)).unwrap();
            assert_eq!(commutator_norm(&spec, &family, &g).unwrap().supremum, 0.0);
        }
        let u = commutator_norm(&spec, &family, &GroupElement::u(&context)).unwrap();
        assert!(u.supremum > 0.0 && u.supremum <= 2.0);
    }
}
