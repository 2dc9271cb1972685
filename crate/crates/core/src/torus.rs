//! Points of the circle `𝕋 = ℝ/ℤ`, stored as angles in `[0, 1)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// An angle mod 1. Rational angles stay exact under addition and integer
/// scaling; mixing in a float angle demotes the result to [`Angle::Approx`].
#[derive(Clone, Debug)]
pub enum Angle {
    Exact(BigRational),
    Approx(f64),
}

pub(crate) fn frac_rational(r: &BigRational) -> BigRational {
    r - r.floor()
}

fn frac_f64(x: f64) -> f64 {
    let f = x - x.floor();
    // x - floor(x) can round up to exactly 1.0 for tiny negative x
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

impl Angle {
    pub fn zero() -> Self {
        Angle::Exact(BigRational::zero())
    }

    pub fn exact(r: BigRational) -> Self {
        Angle::Exact(frac_rational(&r))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Angle::exact(BigRational::new(num.into(), den.into()))
    }

    pub fn approx(x: f64) -> Self {
        Angle::Approx(frac_f64(x))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Angle::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Angle::Exact(r) => r.is_zero(),
            Angle::Approx(x) => *x == 0.0,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Angle::Exact(r) => Some(r),
            Angle::Approx(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Angle::Exact(r) => r.to_f64().unwrap_or(0.0),
            Angle::Approx(x) => *x,
        }
    }

    pub fn add(&self, other: &Angle) -> Angle {
        match (self, other) {
            (Angle::Exact(a), Angle::Exact(b)) => Angle::exact(a + b),
            _ => Angle::approx(self.to_f64() + other.to_f64()),
        }
    }

    pub fn neg(&self) -> Angle {
        match self {
            Angle::Exact(a) => Angle::exact(-a),
            Angle::Approx(x) => Angle::approx(-x),
        }
    }

    pub fn sub(&self, other: &Angle) -> Angle {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Angle {
        match self {
            Angle::Exact(a) => Angle::exact(a * BigRational::from_integer(k.clone())),
            Angle::Approx(x) => Angle::approx(x * k.to_f64().unwrap_or(f64::NAN)),
        }
    }

    pub fn scale_i64(&self, k: i64) -> Angle {
        self.scale(&BigInt::from(k))
    }

    /// `exp(2πi θ)`.
    pub fn to_unit(&self) -> Complex64 {
        let t = std::f64::consts::TAU * self.to_f64();
        Complex64::new(t.cos(), t.sin())
    }

    /// Distance on the circle, in `[0, 1/2]`.
    pub fn distance(&self, other: &Angle) -> f64 {
        let d = self.sub(other).to_f64();
        d.min(1.0 - d)
    }

    /// Exact equality for rational angles, `|Δ| ≤ tol` on the circle otherwise.
    pub fn approx_eq(&self, other: &Angle, tol: f64) -> bool {
        match (self, other) {
            (Angle::Exact(a), Angle::Exact(b)) => a == b,
            _ => self.distance(other) <= tol,
        }
    }
}

impl PartialEq for Angle {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Angle::Exact(a), Angle::Exact(b)) => a == b,
            (Angle::Approx(a), Angle::Approx(b)) => a == b,
            _ => false,
        }
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Angle::Exact(a), Angle::Exact(b)) => Some(a.cmp(b)),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::Exact(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Angle::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Angle::Approx(x) => write!(f, "{x}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_angles_reduce_mod_one() {
        assert_eq!(Angle::ratio(4, 3), Angle::ratio(1, 3));
        assert_eq!(Angle::ratio(-1, 3), Angle::ratio(2, 3));
        assert_eq!(Angle::ratio(1, 3).scale_i64(3), Angle::zero());
        assert!(Angle::ratio(5, 1).is_zero());
    }

    #[test]
    fn mixing_demotes_to_float() {
        let a = Angle::ratio(1, 4).add(&Angle::approx(0.5));
        assert!(!a.is_exact());
        assert!((a.to_f64() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn unit_circle_values() {
        let z = Angle::ratio(1, 4).to_unit();
        assert!((z - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!((Angle::approx(-1e-20).to_f64()) < 1.0);
    }

    #[test]
    fn circle_distance_wraps() {
        let d = Angle::approx(0.95).distance(&Angle::approx(0.05));
        assert!((d - 0.1).abs() < 1e-12);
    }
}
