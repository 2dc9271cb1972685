use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{cyclotomic_difference, resultant, IntPolynomial};

/// `c_q = |Res(Q_a, x^q − 1)| = ∏_{k=1}^q |Q_a(e^{2πik/q})|`: the number of
/// characters fixed by `α̂^q` (period dividing `q`).
pub fn fixed_count(q_poly: &IntPolynomial, q: usize) -> Result<BigInt> {
    if q == 0 {
        return Err(Error::ZeroPeriod);
    }
    Ok(resultant(q_poly.coeffs(), &cyclotomic_difference(q)).abs())
}

/// Möbius function by trial division.
pub fn mobius(n: usize) -> i64 {
    assert!(n > 0);
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|&e| n.is_multiple_of(e)).collect()
}

/// Number of characters of least period exactly `q`: `Σ_{e|q} μ(q/e) c_e`.
pub fn least_period_count(q_poly: &IntPolynomial, q: usize) -> Result<BigInt> {
    if q == 0 {
        return Err(Error::ZeroPeriod);
    }
    let mut total = BigInt::zero();
    for e in divisors(q) {
        let mu = mobius(q / e);
        if mu != 0 {
            total += fixed_count(q_poly, e)? * mu;
        }
    }
    Ok(total)
}

/// Natural log of a positive big integer, exact to f64 precision at any size.
pub fn ln_big(x: &BigInt) -> f64 {
    assert!(x.is_positive(), "ln of a non-positive integer");
    let bits = x.bits();
    if bits < 1000 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthRow {
    pub q: usize,
    #[serde(serialize_with = "crate::dynamics::ser_bigint")]
    pub count: BigInt,
    /// `log(c_q)/q`
    pub rate: f64,
}

/// `log(c_q)/q` for `q = 1..=qmax`, the finite-q approximants of the entropy.
pub fn entropy_growth_check(q_poly: &IntPolynomial, qmax: usize) -> Result<Vec<GrowthRow>> {
    if qmax < 2 {
        return Err(Error::InvalidParameter("qmax must be at least 2".into()));
    }
    (1..=qmax)
        .into_par_iter()
        .map(|q| {
            let count = fixed_count(q_poly, q)?;
            let rate = if count.is_zero() { f64::NEG_INFINITY } else { ln_big(&count) / q as f64 };
            Ok(GrowthRow { q, count, rate })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c).unwrap()
    }

    #[test]
    fn baumslag_solitar_counts() {
        let q = poly(&[-2, 1]);
        assert_eq!(fixed_count(&q, 3).unwrap(), BigInt::from(7));
        assert_eq!(fixed_count(&poly(&[-1, 2]), 3).unwrap(), BigInt::from(7));
    }

    #[test]
    fn golden_counts() {
        let q = poly(&[-1, -1, 1]);
        assert_eq!(fixed_count(&q, 3).unwrap(), BigInt::from(4));
        assert_eq!(fixed_count(&q, 1).unwrap(), BigInt::from(1));
        assert_eq!(fixed_count(&q, 2).unwrap(), BigInt::from(1));
        assert_eq!(least_period_count(&q, 2).unwrap(), BigInt::zero());
    }

    #[test]
    fn least_period_examples() {
        let q = poly(&[-2, 1]);
        assert_eq!(least_period_count(&q, 2).unwrap(), BigInt::from(2));
        assert_eq!(least_period_count(&q, 1).unwrap(), BigInt::from(1));
        // c_6 − c_3 − c_2 + c_1 = 63 − 7 − 3 + 1
        assert_eq!(least_period_count(&q, 6).unwrap(), BigInt::from(54));
    }

    #[test]
    fn zero_period_rejected() {
        let q = poly(&[-2, 1]);
        assert_eq!(fixed_count(&q, 0), Err(Error::ZeroPeriod));
        assert_eq!(least_period_count(&q, 0), Err(Error::ZeroPeriod));
    }

    #[test]
    fn mobius_values() {
        let mu: Vec<i64> = (1..=12).map(mobius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn growth_rates() {
        let rows = entropy_growth_check(&poly(&[-2, 1]), 20).unwrap();
        assert!((rows[9].rate - 1023f64.ln() / 10.0).abs() < 1e-15);
        assert!((rows[19].rate - 2f64.ln()).abs() < 1e-6);
        let rows = entropy_growth_check(&poly(&[-1, -1, 1]), 3).unwrap();
        assert_eq!(rows[0].rate, 0.0);
        assert!(entropy_growth_check(&poly(&[-2, 1]), 1).is_err());
    }

    #[test]
    fn big_logs() {
        let x = BigInt::from(3).pow(2000);
        assert!((ln_big(&x) - 2000.0 * 3f64.ln()).abs() < 1e-9);
        assert_eq!(ln_big(&BigInt::from(1)), 0.0);
    }
}
