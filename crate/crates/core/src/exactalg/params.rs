use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// Largest denominator tried when recognizing `a` as a rational number.
const MAX_DENOMINATOR: i64 = 10_000;
const RATIONAL_TOL: f64 = 1e-12;

/// Physical parameters `(κ, ω₀)` of the compactified κ-Minkowski model.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeformationParams {
    pub kappa: f64,
    pub omega0: f64,
}

#[derive(Clone, Debug)]
pub struct ParameterValue {
    /// `a = exp(−ω₀/κ)`.
    pub a: f64,
    /// `l·x − m` when `a` is recognized as `m/l` with a small denominator.
    pub candidate: Option<IntPolynomial>,
}

/// `a = exp(−ω₀/κ)`, with a rational-recognition pass.
pub fn params_to_a(p: DeformationParams) -> Result<ParameterValue> {
    if !(p.kappa > 0.0) || !p.kappa.is_finite() {
        return Err(Error::InvalidParameter(format!("kappa must be positive, got {}", p.kappa)));
    }
    if !p.omega0.is_finite() {
        return Err(Error::InvalidParameter("omega0 must be finite".into()));
    }
    let a = (-p.omega0 / p.kappa).exp();
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::InvalidParameter(format!("a = {a} is not a positive real")));
    }
    if (a - 1.0).abs() <= RATIONAL_TOL {
        return Err(Error::UnitParameter);
    }
    let candidate = recognize_rational(a).and_then(|(m, l)| {
        IntPolynomial::normalize(&[BigInt::from(-m), BigInt::from(l)]).ok()
    });
    Ok(ParameterValue { a, candidate })
}

/// Best continued-fraction convergent `m/l` with `l ≤ MAX_DENOMINATOR` and
/// `|a − m/l| ≤ 1e−12·max(1, a)`.
fn recognize_rational(a: f64) -> Option<(i64, i64)> {
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut x = a;
    for _ in 0..64 {
        let ai = x.floor();
        if ai > 1e15 {
            break;
        }
        let ai = ai as i64;
        let h2 = ai.checked_mul(h1)?.checked_add(h0)?;
        let k2 = ai.checked_mul(k1)?.checked_add(k0)?;
        if k2 > MAX_DENOMINATOR {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (a - h1 as f64 / k1 as f64).abs() <= RATIONAL_TOL * a.max(1.0) {
            return Some((h1, k1));
        }
        let frac = x - x.floor();
        if frac == 0.0 {
            break;
        }
        x = 1.0 / frac;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_values() {
        let kappa = 0.7;
        let v = params_to_a(DeformationParams { kappa, omega0: -kappa * 2f64.ln() }).unwrap();
        assert!((v.a - 2.0).abs() < 1e-12);
        assert_eq!(v.candidate.unwrap().to_string(), "x - 2");
        let v = params_to_a(DeformationParams { kappa: 1.0, omega0: -(3f64.ln()) }).unwrap();
        assert!((v.a - 3.0).abs() < 1e-12);
        assert_eq!(v.candidate.unwrap().to_string(), "x - 3");
    }

    #[test]
    fn rational_and_irrational() {
        let v = params_to_a(DeformationParams { kappa: 1.0, omega0: -(2f64 / 3.0).ln() }).unwrap();
        assert_eq!(v.candidate.unwrap().to_string(), "3x - 2");
        let v = params_to_a(DeformationParams { kappa: 1.0, omega0: -1.0 }).unwrap();
        assert!((v.a - std::f64::consts::E).abs() < 1e-12);
        assert!(v.candidate.is_none());
    }

    #[test]
    fn invalid_inputs() {
        assert_eq!(params_to_a(DeformationParams { kappa: 1.0, omega0: 0.0 }).unwrap_err(), Error::UnitParameter);
        assert!(matches!(
            params_to_a(DeformationParams { kappa: 0.0, omega0: 1.0 }),
            Err(Error::InvalidParameter(_))
        ));
        assert!(params_to_a(DeformationParams { kappa: -2.0, omega0: 1.0 }).is_err());
    }
}
