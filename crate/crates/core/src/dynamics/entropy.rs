use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::counts::ln_big;
use crate::error::{Error, Result};
use crate::exactalg::{IntPolynomial, Parameter};

pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

const MAX_ITERATIONS: usize = 500;
const MAX_RESTARTS: usize = 8;
const POLISH_STEPS: usize = 3;

#[derive(Clone, Debug, Serialize)]
pub struct RootEstimate {
    pub re: f64,
    pub im: f64,
    pub modulus: f64,
    /// Radius of a disk around the estimate guaranteed to contain a root.
    pub radius: f64,
}

impl RootEstimate {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EntropyReport {
    /// `+∞` for a transcendental parameter.
    pub value: f64,
    pub error_bound: f64,
    pub roots: Vec<RootEstimate>,
    /// `log|q_d|`
    pub leading_contribution: f64,
    pub disks_disjoint: bool,
    pub notes: Vec<String>,
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64, f64) {
    // value, derivative, and Σ|c_j||z|^j for the rounding bound
    let r = z.norm();
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    let mut abs = 0.0;
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
        abs = abs * r + c.abs();
    }
    (p, dp, abs)
}

/// All complex roots of `Q` by Aberth–Ehrlich iteration, with inclusion
/// radii `d·(|p(z_i)| + δ_i) / (|q_d| ∏_{j≠i} |z_i − z_j|)` where `δ_i`
/// bounds the rounding error of the Horner evaluation.
pub fn find_roots(q_poly: &IntPolynomial, tol: f64) -> Result<Vec<RootEstimate>> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tol must be positive".into()));
    }
    let coeffs = q_poly.to_f64_coeffs();
    let d = q_poly.degree();
    if d == 0 {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut last_residual = f64::INFINITY;
    for attempt in 0..=MAX_RESTARTS {
        let mut z = initial_guesses(&coeffs, attempt, &mut rng);
        match aberth(&coeffs, &mut z, tol) {
            Ok(()) => return Ok(inclusion_disks(&coeffs, &z)),
            Err(res) => last_residual = res,
        }
    }
    Err(Error::NoConvergence { iterations: MAX_ITERATIONS * (MAX_RESTARTS + 1), residual: last_residual })
}

fn initial_guesses(coeffs: &[f64], attempt: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let lead = coeffs[d];
    let center = -coeffs[d - 1] / (d as f64 * lead);
    let radius = (coeffs[0] / lead).abs().powf(1.0 / d as f64).max(0.5);
    (0..d)
        .map(|k| {
            let mut t = std::f64::consts::TAU * k as f64 / d as f64 + 0.4;
            let mut r = radius;
            if attempt > 0 {
                t += rng.random_range(-0.5..0.5);
                r *= rng.random_range(0.5..2.0);
            }
            Complex64::new(center, 0.0) + Complex64::from_polar(r, t)
        })
        .collect()
}

/// Returns the largest relative residual on failure.
fn aberth(coeffs: &[f64], z: &mut [Complex64], tol: f64) -> std::result::Result<(), f64> {
    let d = z.len();
    let step_tol = (tol * 1e-3).max(4.0 * f64::EPSILON);
    let mut settled = 0;
    for _ in 0..MAX_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for i in 0..d {
            let (p, dp, _) = horner(coeffs, z[i]);
            if p.is_zero() {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..d).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !w.is_finite() {
                return Err(f64::INFINITY);
            }
            z[i] -= w;
            max_step = max_step.max(w.norm() / z[i].norm().max(1.0));
        }
        if max_step <= step_tol {
            settled += 1;
            if settled > POLISH_STEPS {
                break;
            }
        }
    }
    let residual = z
        .iter()
        .map(|&zi| {
            let (p, _, abs) = horner(coeffs, zi);
            p.norm() / abs
        })
        .fold(0.0, f64::max);
    if residual < tol && distinct(z) {
        Ok(())
    } else {
        Err(residual)
    }
}

fn distinct(z: &[Complex64]) -> bool {
    (0..z.len()).all(|i| (0..i).all(|j| z[i] != z[j]))
}

fn inclusion_disks(coeffs: &[f64], z: &[Complex64]) -> Vec<RootEstimate> {
    let d = z.len();
    let lead = coeffs[d].abs();
    let gamma = 2.0 * d as f64 * f64::EPSILON / (1.0 - 2.0 * d as f64 * f64::EPSILON);
    (0..d)
        .map(|i| {
            let (p, _, abs) = horner(coeffs, z[i]);
            let prod: f64 = (0..d).filter(|&j| j != i).map(|j| (z[i] - z[j]).norm()).product();
            let radius = d as f64 * (p.norm() + gamma * abs) / (lead * prod);
            RootEstimate { re: z[i].re, im: z[i].im, modulus: z[i].norm(), radius }
        })
        .collect()
}

/// Topological entropy `log|q_d| + Σ_{|r|>1} log|r|`; `+∞` when transcendental.
pub fn entropy(param: &Parameter, tol: f64) -> Result<EntropyReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tol must be positive".into()));
    }
    let q_poly = match param {
        Parameter::Transcendental => {
            return Ok(EntropyReport {
                value: f64::INFINITY,
                error_bound: 0.0,
                roots: Vec::new(),
                leading_contribution: f64::INFINITY,
                disks_disjoint: true,
                notes: vec!["transcendental parameter".into()],
            })
        }
        Parameter::Algebraic(q) => q,
    };
    let leading_contribution = ln_big(&q_poly.leading().magnitude().clone().into());
    let roots = find_roots(q_poly, tol)?;
    let mut notes = Vec::new();
    let disks_disjoint = (0..roots.len()).all(|i| {
        (0..i).all(|j| (roots[i].value() - roots[j].value()).norm() > roots[i].radius + roots[j].radius)
    });
    if !disks_disjoint {
        notes.push("inclusion disks overlap".into());
    }

    let mut value = leading_contribution;
    let mut error_bound = 4.0 * f64::EPSILON * value.abs();
    if q_poly.degree() == 1 {
        // the single root is −q_0/q_1, so the contribution is exact up to logs
        let c0 = ln_big(&q_poly.constant().magnitude().clone().into());
        value += (c0 - leading_contribution).max(0.0);
        error_bound = 4.0 * f64::EPSILON * (c0 + leading_contribution);
    } else {
        for r in &roots {
            let lo = (r.modulus - r.radius).max(f64::MIN_POSITIVE);
            let hi = r.modulus + r.radius;
            if hi <= 1.0 {
                continue;
            }
            if lo <= 1.0 {
                notes.push(format!(
                    "root {:.6}{:+.6}i is within {:.1e} of the unit circle",
                    r.re, r.im, r.radius
                ));
            }
            let contribution = r.modulus.ln().max(0.0);
            value += contribution;
            error_bound += (hi.ln() - contribution).max(contribution - lo.ln().max(0.0)) + 4.0 * f64::EPSILON;
        }
    }
    Ok(EntropyReport { value, error_bound, roots, leading_contribution, disks_disjoint, notes })
}
