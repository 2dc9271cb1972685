use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::counts::{divisors, fixed_count};
use crate::error::{Error, Result};
use crate::exactalg::{smith_normal_form, BElement, IntMatrix, IntPolynomial};
use crate::torus::Angle;

/// Largest number of characters `enumerate_characters` will materialize.
pub const ENUMERATION_LIMIT: u64 = 1_000_000;

const FLOAT_TOL: f64 = 1e-12;

/// A character of `B_a` fixed by `α̂^q`, stored by its angles on the orbit
/// `θ_n = angle of χ(aⁿ)`, `n mod q`.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    angles: Vec<Angle>,
    least_period: usize,
}

impl Character {
    pub fn new(angles: Vec<Angle>) -> Result<Self> {
        if angles.is_empty() {
            return Err(Error::ZeroPeriod);
        }
        let least_period = least_period_of(&angles);
        Ok(Character { angles, least_period })
    }

    pub fn from_ratios(pairs: &[(i64, i64)]) -> Result<Self> {
        Character::new(pairs.iter().map(|&(n, d)| Angle::ratio(n, d)).collect())
    }

    pub fn trivial(q: usize) -> Result<Self> {
        Character::new(vec![Angle::zero(); q])
    }

    pub fn period(&self) -> usize {
        self.angles.len()
    }

    pub fn least_period(&self) -> usize {
        self.least_period
    }

    pub fn is_least_period(&self) -> bool {
        self.least_period == self.angles.len()
    }

    pub fn angles(&self) -> &[Angle] {
        &self.angles
    }

    pub fn is_exact(&self) -> bool {
        self.angles.iter().all(Angle::is_exact)
    }

    /// `θ_n` for any integer `n`.
    pub fn angle(&self, n: i64) -> &Angle {
        &self.angles[n.rem_euclid(self.angles.len() as i64) as usize]
    }

    /// `α̂(χ) = χ∘α`: `θ_n ↦ θ_{n+1}`.
    pub fn shift(&self) -> Character {
        self.rotate(1)
    }

    pub fn rotate(&self, k: usize) -> Character {
        let q = self.angles.len();
        let angles = (0..q).map(|i| self.angles[(i + k) % q].clone()).collect();
        Character { angles, least_period: self.least_period }
    }

    /// Lexicographically smallest rotation, used as the orbit representative.
    pub fn canonical_rotation(&self) -> Character {
        (0..self.period())
            .map(|k| self.rotate(k))
            .min_by(|x, y| cmp_angles(&x.angles, &y.angles))
            .unwrap()
    }

    /// Largest distance from zero of `Σ_j q_j θ_{n+j}` over `n`. Zero means
    /// the character is defined on `B_a`.
    pub fn recursion_defect(&self, q_poly: &IntPolynomial) -> f64 {
        (0..self.period() as i64)
            .map(|n| self.recursion_term(q_poly, n).distance(&Angle::zero()))
            .fold(0.0, f64::max)
    }

    /// Exact check for rational characters, `≤ 1e−12` for float ones.
    pub fn satisfies_recursion(&self, q_poly: &IntPolynomial) -> bool {
        (0..self.period() as i64).all(|n| self.recursion_term(q_poly, n).approx_eq(&Angle::zero(), FLOAT_TOL))
    }

    fn recursion_term(&self, q_poly: &IntPolynomial, n: i64) -> Angle {
        q_poly
            .coeffs()
            .iter()
            .enumerate()
            .fold(Angle::zero(), |acc, (j, c)| acc.add(&self.angle(n + j as i64).scale(c)))
    }

    /// Angle of `χ(b) = Π_n χ(aⁿ)^{m_n}` for `b = Σ m_n aⁿ`.
    pub fn eval_angle(&self, b: &BElement) -> Angle {
        b.monomials()
            .iter()
            .fold(Angle::zero(), |acc, (n, m)| acc.add(&self.angle(*n).scale(m)))
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.angles.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn cmp_angles(x: &[Angle], y: &[Angle]) -> std::cmp::Ordering {
    for (a, b) in x.iter().zip(y) {
        match a.partial_cmp(b) {
            Some(std::cmp::Ordering::Equal) | None => continue,
            Some(o) => return o,
        }
    }
    x.len().cmp(&y.len())
}

fn least_period_of(angles: &[Angle]) -> usize {
    let q = angles.len();
    divisors(q)
        .into_iter()
        .find(|&p| (0..q).all(|i| angles[i].approx_eq(&angles[(i + p) % q], FLOAT_TOL)))
        .unwrap_or(q)
}

/// The `q×q` system whose row `n` holds the coefficients of `Q(x)·xⁿ mod (x^q − 1)`.
pub fn circulant(q_poly: &IntPolynomial, q: usize) -> IntMatrix {
    let mut c = IntMatrix::zeros(q, q);
    for n in 0..q {
        for (j, coeff) in q_poly.coeffs().iter().enumerate() {
            c[(n, (n + j) % q)] += coeff;
        }
    }
    c
}

/// All `c_q` characters fixed by `α̂^q`, sorted lexicographically by angles.
///
/// Solves `C·θ ≡ 0 (mod ℤ^q)` through the Smith form `U C V = S`: the
/// solutions are `θ = V·φ` with `φ_i ∈ (1/s_i)ℤ / ℤ`.
pub fn enumerate_characters(q_poly: &IntPolynomial, q: usize) -> Result<Vec<Character>> {
    let count = fixed_count(q_poly, q)?;
    if count > BigInt::from(ENUMERATION_LIMIT) {
        return Err(Error::guard("c_q", &count, ENUMERATION_LIMIT));
    }
    let snf = smith_normal_form(&circulant(q_poly, q));
    let factors: Vec<u64> = snf
        .invariant_factors()
        .iter()
        .map(|s| s.abs().to_u64().unwrap_or(0))
        .collect();
    if factors.contains(&0) {
        return Err(Error::Unsupported(format!(
            "Q has a root of unity of order dividing {q}; the fixed set is not finite"
        )));
    }
    let total: u64 = factors.iter().product();
    debug_assert_eq!(BigInt::from(total), count);

    let mut out = Vec::with_capacity(total as usize);
    let mut digits = vec![0u64; q];
    loop {
        let phi: Vec<BigRational> = digits
            .iter()
            .zip(&factors)
            .map(|(&k, &s)| BigRational::new(k.into(), s.into()))
            .collect();
        let angles = (0..q)
            .map(|n| {
                let mut acc = BigRational::zero();
                for (i, p) in phi.iter().enumerate() {
                    acc += BigRational::from_integer(snf.v[(n, i)].clone()) * p;
                }
                Angle::exact(acc)
            })
            .collect();
        out.push(Character::new(angles)?);

        // mixed-radix increment
        let mut i = 0;
        loop {
            if i == q {
                out.sort_by(|x, y| cmp_angles(&x.angles, &y.angles));
                return Ok(out);
            }
            digits[i] += 1;
            if digits[i] < factors[i] {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
fn is_trivial(ch: &Character) -> bool {
    ch.angles.iter().all(|a| a.is_zero())
}
