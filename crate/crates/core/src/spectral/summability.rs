use rayon::prelude::*;
use serde::Serialize;

use super::dirac::{DiracBlock, DiracSpec};
use crate::dynamics::ln_big;
use crate::error::{Error, Result};

/// Increments must grow over this many consecutive blocks, with the running
/// total above [`DIVERGENCE_THRESHOLD`], before divergence is reported.
const DIVERGENCE_RUN: usize = 3;
const DIVERGENCE_THRESHOLD: f64 = 1.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    CertifiedSummable,
    DivergentEvidence,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct SummabilityReport {
    pub exponent: f64,
    /// `(q, Σ_{q' ≤ q} contribution)`.
    pub partial_sums: Vec<(usize, f64)>,
    pub increments: Vec<f64>,
    pub total: f64,
    /// Bound on the contribution of all blocks `q > qmax`; present when the
    /// schedule guarantees `≤ 2^{−q}` per block at this exponent.
    pub tail_bound: Option<f64>,
    pub verdict: Verdict,
    pub multiplicity_rule: String,
}

/// Compensated (Neumaier) summation.
fn neumaier(terms: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            c += (sum - s) + t;
        } else {
            c += (t - s) + sum;
        }
        sum = s;
    }
    sum + c
}

/// `copies · Σ_j (1 + λ_j²)^{−p′/2}`, evaluated in log space.
fn block_contribution(block: &DiracBlock, exponent: f64) -> f64 {
    let ln_copies = if block.copies > 0.into() { ln_big(&block.copies) } else { return 0.0 };
    neumaier(block.eigenvalues().into_iter().map(|lambda| {
        let l = lambda.abs();
        let ln_one_plus_sq = if l > 1e8 { 2.0 * l.ln() + (l * l).recip().ln_1p() } else { (l * l).ln_1p() };
        (ln_copies - 0.5 * exponent * ln_one_plus_sq).exp()
    }))
}

/// Partial sums of `Tr((1 + D²)^{−p′/2})` by block.
pub fn summability_report(spec: &DiracSpec, exponent: f64) -> Result<SummabilityReport> {
    if !(exponent > 0.0) || !exponent.is_finite() {
        return Err(Error::InvalidParameter(format!("exponent must be positive, got {exponent}")));
    }
    let increments: Vec<f64> = spec.blocks.par_iter().map(|b| block_contribution(b, exponent)).collect();
    let mut partial_sums = Vec::with_capacity(increments.len());
    for (i, b) in spec.blocks.iter().enumerate() {
        partial_sums.push((b.q, neumaier(increments[..=i].iter().copied())));
    }
    let total = partial_sums.last().map_or(0.0, |&(_, s)| s);
    let qmax = spec.qmax();

    let certified = exponent >= spec.p;
    let tail_bound = certified.then(|| 0.5f64.powi(qmax as i32));
    let growing = increments.len() > DIVERGENCE_RUN
        && increments[increments.len() - DIVERGENCE_RUN - 1..].windows(2).all(|w| w[1] > w[0]);
    let verdict = if certified {
        Verdict::CertifiedSummable
    } else if growing && total > DIVERGENCE_THRESHOLD {
        Verdict::DivergentEvidence
    } else {
        Verdict::Inconclusive
    };
    Ok(SummabilityReport {
        exponent,
        partial_sums,
        increments,
        total,
        tail_bound,
        verdict,
        multiplicity_rule: spec.multiplicity_rule.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{IntPolynomial, Parameter};
    use crate::spectral::{dirac_commuting, dirac_mixed};

    fn doubling() -> Parameter {
        Parameter::Algebraic(IntPolynomial::from_i64(&[-2, 1]).unwrap())
    }

    #[test]
    fn first_block_contributions() {
        let r = summability_report(&dirac_commuting(&doubling(), 2.0, 1).unwrap(), 2.0).unwrap();
        assert!((r.total - 1.0 / 3.0).abs() < 1e-15);
        let r = summability_report(&dirac_commuting(&doubling(), 4.0, 1).unwrap(), 4.0).unwrap();
        assert!((r.total - (1.0 + 2f64.sqrt()).powi(-2)).abs() < 1e-15);
    }

    #[test]
    fn certified_at_p() {
        let spec = dirac_commuting(&doubling(), 2.0, 10).unwrap();
        let r = summability_report(&spec, 2.0).unwrap();
        assert!(r.total < 1.0);
        assert!(r.tail_bound.unwrap() < 0.5f64.powi(9));
        assert_eq!(r.verdict, Verdict::CertifiedSummable);
        for (q, inc) in (1..).zip(&r.increments) {
            assert!(*inc <= 0.5f64.powi(q), "q={q}: {inc}");
        }
        assert!(r.partial_sums.windows(2).all(|w| w[0].1 <= w[1].1));
    }

    #[test]
    fn divergent_at_small_exponent() {
        let spec = dirac_commuting(&doubling(), 2.0, 10).unwrap();
        let r = summability_report(&spec, 0.1).unwrap();
        assert_eq!(r.verdict, Verdict::DivergentEvidence);
        let mixed = dirac_mixed(&doubling(), 2.0, 10).unwrap();
        assert_eq!(summability_report(&mixed, 0.1).unwrap().verdict, Verdict::DivergentEvidence);
    }

    #[test]
    fn empty_spec() {
        let spec = dirac_commuting(&doubling(), 2.0, 0).unwrap();
        let r = summability_report(&spec, 2.0).unwrap();
        assert_eq!(r.total, 0.0);
        assert_eq!(r.verdict, Verdict::CertifiedSummable);
        assert_eq!(r.tail_bound, Some(1.0));
        assert!(summability_report(&spec, 0.0).is_err());
    }

    #[test]
    fn compensated_sum() {
        let terms = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(neumaier(terms), 2.0);
    }
}
