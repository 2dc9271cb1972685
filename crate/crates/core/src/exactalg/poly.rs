use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest absolute value we are willing to factor by trial division when
/// running the rational-root and quadratic-factor searches.
const TRIAL_DIVISION_LIMIT: u64 = 1_000_000_000_000;

/// Highest degree for which irreducibility is certified.
pub const IRREDUCIBILITY_MAX_DEGREE: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Irreducibility {
    Verified,
    /// Degree above the certified range, or coefficients too large to factor.
    Unverified,
}

/// A primitive integer polynomial `Q_a = q_0 + q_1 x + … + q_d x^d` with
/// `q_d > 0`, `q_0 ≠ 0` and a positive real root different from 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
    irreducibility: Irreducibility,
}

impl IntPolynomial {
    /// Normalizes raw ascending coefficients: strips trailing zeros, divides
    /// out the content, makes the leading coefficient positive, then checks
    /// the root conditions and (for `d ≤ 4`) irreducibility.
    pub fn normalize(raw: &[BigInt]) -> Result<Self> {
        let mut coeffs: Vec<BigInt> = raw.to_vec();
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        if coeffs.len() < 2 {
            return Err(Error::InvalidParameter("polynomial must have degree at least 1".into()));
        }
        let content = coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let sign = if coeffs.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        let unit = content * sign;
        for c in coeffs.iter_mut() {
            *c = &*c / &unit;
        }
        if coeffs[0].is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let d = coeffs.len() - 1;
        let mut poly = IntPolynomial { coeffs, irreducibility: Irreducibility::Verified };

        if poly.eval_rational(&BigRational::one()).is_zero() {
            if d == 1 {
                return Err(Error::UnitParameter);
            }
            let factor = vec![-BigInt::one(), BigInt::one()];
            return Err(reducible(&poly.coeffs, &factor));
        }

        if d >= 2 {
            match find_rational_root(&poly.coeffs) {
                RootSearch::Found(factor) => return Err(reducible(&poly.coeffs, &factor)),
                RootSearch::TooLarge => poly.irreducibility = Irreducibility::Unverified,
                RootSearch::None => {}
            }
        }
        if d == 4 && poly.irreducibility == Irreducibility::Verified {
            match find_quadratic_factor(&poly.coeffs) {
                RootSearch::Found(factor) => return Err(reducible(&poly.coeffs, &factor)),
                RootSearch::TooLarge => poly.irreducibility = Irreducibility::Unverified,
                RootSearch::None => {}
            }
        }
        if d > IRREDUCIBILITY_MAX_DEGREE {
            poly.irreducibility = Irreducibility::Unverified;
        }

        if count_positive_roots(&poly.coeffs) == 0 {
            return Err(Error::NoPositiveRoot);
        }
        Ok(poly)
    }

    pub fn from_i64(raw: &[i64]) -> Result<Self> {
        let big: Vec<BigInt> = raw.iter().map(|&c| BigInt::from(c)).collect();
        Self::normalize(&big)
    }

    /// Skips every validity check. Used for the `ℤ²` control group (`Q = x − 1`).
    pub(crate) fn from_coeffs_unchecked(coeffs: Vec<BigInt>) -> Self {
        IntPolynomial { coeffs, irreducibility: Irreducibility::Unverified }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `q_d`.
    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().unwrap()
    }

    /// `q_0`.
    pub fn constant(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.irreducibility
    }

    /// `Q*(x) = x^d Q(1/x)`, sign-normalized. Its positive root is `1/a`.
    pub fn reciprocal(&self) -> IntPolynomial {
        let mut coeffs: Vec<BigInt> = self.coeffs.iter().rev().cloned().collect();
        if coeffs.last().unwrap().is_negative() {
            for c in coeffs.iter_mut() {
                *c = -&*c;
            }
        }
        IntPolynomial { coeffs, irreducibility: self.irreducibility }
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Whether this is `x − m` for an integer `m`, i.e. `G_a = BS(1, m)`.
    pub fn baumslag_solitar_m(&self) -> Option<BigInt> {
        (self.degree() == 1 && self.leading().is_one()).then(|| -self.constant())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_coeffs(&self.coeffs))
    }
}

pub(crate) fn format_coeffs(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (j, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let show_mag = j == 0 || !mag.is_one();
        if show_mag {
            out.push_str(&mag.to_string());
        }
        match j {
            0 => {}
            1 => out.push('x'),
            _ => out.push_str(&format!("x^{j}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn reducible(poly: &[BigInt], factor: &[BigInt]) -> Error {
    let (quot, _) = div_rem(&to_rational(poly), &to_rational(factor));
    let quot = primitive_integer(&quot);
    Error::Reducible { factor: format_coeffs(factor), cofactor: format_coeffs(&quot) }
}

enum RootSearch {
    Found(Vec<BigInt>),
    None,
    TooLarge,
}

/// Positive divisors of `|n|`, or `None` when `|n|` exceeds the trial-division limit.
pub(crate) fn positive_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > TRIAL_DIVISION_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n % k == 0 {
            small.push(k);
            if k * k != n {
                large.push(n / k);
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Rational-root test: a root `p/r` has `p | q_0` and `r | q_d`.
fn find_rational_root(coeffs: &[BigInt]) -> RootSearch {
    let (Some(ps), Some(rs)) = (positive_divisors(&coeffs[0]), positive_divisors(coeffs.last().unwrap()))
    else {
        return RootSearch::TooLarge;
    };
    let poly = IntPolynomial::from_coeffs_unchecked(coeffs.to_vec());
    for &r in &rs {
        for &p in &ps {
            if BigInt::from(p).gcd(&BigInt::from(r)) != BigInt::one() {
                continue;
            }
            for sign in [1i64, -1] {
                let root = BigRational::new(BigInt::from(p) * sign, BigInt::from(r));
                if poly.eval_rational(&root).is_zero() {
                    return RootSearch::Found(vec![-BigInt::from(p) * sign, BigInt::from(r)]);
                }
            }
        }
    }
    RootSearch::None
}

/// Searches for an integer quadratic factor `g = g_2 x² + g_1 x + g_0` of a
/// quartic without rational roots. `g_2 | q_4`, `g_0 | q_0`, and `g(1)` must
/// divide `Q(1) ≠ 0`, which leaves finitely many `g_1`; candidates are also
/// filtered by the Mignotte bound `|g_1| ≤ 2‖Q‖₂`.
fn find_quadratic_factor(coeffs: &[BigInt]) -> RootSearch {
    let poly = IntPolynomial::from_coeffs_unchecked(coeffs.to_vec());
    let at_one = poly.eval_rational(&BigRational::one()).to_integer();
    let at_minus_one = poly.eval_rational(&-BigRational::one()).to_integer();
    let (Some(leads), Some(consts), Some(values)) = (
        positive_divisors(coeffs.last().unwrap()),
        positive_divisors(&coeffs[0]),
        positive_divisors(&at_one),
    ) else {
        return RootSearch::TooLarge;
    };
    let norm_sq: BigInt = coeffs.iter().map(|c| c * c).sum();
    // (2‖Q‖₂)² = 4‖Q‖₂²
    let bound_sq = norm_sq * 4;
    let rational = to_rational(coeffs);
    for &g2 in &leads {
        for &g0 in &consts {
            for s0 in [1i64, -1] {
                let g2 = BigInt::from(g2);
                let g0 = BigInt::from(g0) * s0;
                for &e in &values {
                    for se in [1i64, -1] {
                        let g1 = BigInt::from(e) * se - &g2 - &g0;
                        if &g1 * &g1 > bound_sq {
                            continue;
                        }
                        let at_m1 = &g2 - &g1 + &g0;
                        if at_m1.is_zero() || !(&at_minus_one % &at_m1).is_zero() {
                            continue;
                        }
                        let g = vec![g0.clone(), g1.clone(), g2.clone()];
                        let (quot, rem) = div_rem(&rational, &to_rational(&g));
                        if rem.iter().all(|c| c.is_zero()) && quot.iter().all(|c| c.is_integer()) {
                            return RootSearch::Found(g);
                        }
                    }
                }
            }
        }
    }
    RootSearch::None
}

pub(crate) fn to_rational(coeffs: &[BigInt]) -> Vec<BigRational> {
    coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Long division in `ℚ[x]`; coefficients ascending.
pub(crate) fn div_rem(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = num.to_vec();
    trim(&mut rem);
    let mut den = den.to_vec();
    trim(&mut den);
    assert!(!den.is_empty(), "division by the zero polynomial");
    let dd = den.len() - 1;
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    let lead = den[dd].clone();
    while rem.len() > dd && !rem.is_empty() {
        let shift = rem.len() - 1 - dd;
        let c = rem.last().unwrap() / &lead;
        for (j, dj) in den.iter().enumerate() {
            rem[shift + j] = &rem[shift + j] - &c * dj;
        }
        quot[shift] = c;
        rem.pop();
        trim(&mut rem);
    }
    (quot, rem)
}

fn primitive_integer(p: &[BigRational]) -> Vec<BigInt> {
    let lcm = p.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let sign = if ints.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    if g.is_zero() {
        return ints;
    }
    ints.iter().map(|c| c / &g * &sign).collect()
}

fn derivative(p: &[BigRational]) -> Vec<BigRational> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(j, c)| c * BigRational::from_integer(BigInt::from(j)))
        .collect()
}

/// Number of distinct real roots in `(0, ∞)` via a Sturm sequence.
pub(crate) fn count_positive_roots(coeffs: &[BigInt]) -> usize {
    let p0 = to_rational(coeffs);
    let p1 = derivative(&p0);
    let mut seq = vec![p0, p1];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            break;
        }
        let (_, r) = div_rem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    let sign_changes = |signs: Vec<i8>| {
        let nz: Vec<i8> = signs.into_iter().filter(|&s| s != 0).collect();
        nz.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let sgn = |c: &BigRational| -> i8 {
        if c.is_positive() {
            1
        } else if c.is_negative() {
            -1
        } else {
            0
        }
    };
    // at 0⁺ the sign of a polynomial is that of its lowest nonzero coefficient
    let at_zero: Vec<i8> = seq
        .iter()
        .map(|p| p.iter().find(|c| !c.is_zero()).map(sgn).unwrap_or(0))
        .collect();
    let at_inf: Vec<i8> = seq.iter().map(|p| p.last().map(sgn).unwrap_or(0)).collect();
    sign_changes(at_zero).saturating_sub(sign_changes(at_inf))
}
