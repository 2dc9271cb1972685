use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::exact::StepLaw;
use crate::error::{Error, Result};
use crate::exactalg::{Context, IntPolynomial};

/// Samples per independent random substream.
const CHUNK: usize = 1 << 14;
/// Mersenne prime used for the fast divisibility filter.
const PRIME: u128 = (1 << 61) - 1;
const Z95: f64 = 1.959_963_984_540_054;

#[derive(Clone, Debug, Serialize)]
pub struct McEstimate {
    pub t: usize,
    pub samples: usize,
    pub seed: u64,
    pub hits: u64,
    pub estimate: f64,
    /// `sqrt(p̂(1 − p̂)/n)`
    pub sigma: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

fn mod_p(x: &BigInt) -> u128 {
    x.mod_floor(&BigInt::from(PRIME)).to_u128().unwrap()
}

fn mul_mod(a: u128, b: u128) -> u128 {
    a * b % PRIME
}

fn pow_mod(mut a: u128, mut e: u128) -> u128 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

/// Decides `Σ c_i a^{i − t} = 0` in `B_a` from a Laurent coefficient window.
struct IdentityTest {
    /// `Q mod p`, made monic; `None` when `p | q_d`.
    monic_mod_p: Option<Vec<u128>>,
    poly: Option<IntPolynomial>,
}

impl IdentityTest {
    fn new(ctx: &Context) -> Self {
        let poly = ctx.param().polynomial().cloned();
        let monic_mod_p = poly.as_ref().and_then(|q| {
            let lead = mod_p(q.leading());
            if lead == 0 {
                return None;
            }
            let inv = pow_mod(lead, PRIME - 2);
            Some(q.coeffs().iter().map(|c| mul_mod(mod_p(c), inv)).collect())
        });
        IdentityTest { monic_mod_p, poly }
    }

    fn is_zero(&self, coeffs: &[i64]) -> bool {
        let Some(q) = &self.poly else {
            return coeffs.iter().all(|&c| c == 0);
        };
        if let Some(monic) = &self.monic_mod_p {
            // Gauss: Q | P over ℚ forces Q | P over ℤ, hence mod p
            if !remainder_mod_p_is_zero(coeffs, monic) {
                return false;
            }
        }
        let p: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        if p.iter().all(Zero::is_zero) {
            return true;
        }
        let num = crate::exactalg::to_rational(&p);
        let den = crate::exactalg::to_rational(q.coeffs());
        crate::exactalg::div_rem(&num, &den).1.iter().all(Zero::is_zero)
    }
}

fn remainder_mod_p_is_zero(coeffs: &[i64], monic: &[u128]) -> bool {
    let d = monic.len() - 1;
    let mut r: Vec<u128> = coeffs.iter().map(|&c| c.rem_euclid(PRIME as i64) as u128).collect();
    if r.len() <= d {
        return r.iter().all(|&c| c == 0);
    }
    for top in (d..r.len()).rev() {
        let f = r[top];
        if f == 0 {
            continue;
        }
        for (j, m) in monic.iter().enumerate() {
            let idx = top - d + j;
            r[idx] = (r[idx] + PRIME - mul_mod(f, *m)) % PRIME;
        }
    }
    r[..d].iter().all(|&c| c == 0)
}

/// Fraction of `samples` walks of length `t` that end at the identity.
/// Substream `k` of ChaCha8 seeded with `seed` drives chunk `k`, so the result
/// does not depend on the thread count.
pub fn mc_return(ctx: &Arc<Context>, t: usize, samples: usize, seed: u64, law: StepLaw) -> Result<McEstimate> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    let test = IdentityTest::new(ctx);
    let chunks = samples.div_ceil(CHUNK);
    let denom = law.denominator() as u32;
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let n = CHUNK.min(samples - k * CHUNK);
            let mut coeffs = vec![0i64; 2 * t + 1];
            let mut hits = 0u64;
            for _ in 0..n {
                coeffs.iter_mut().for_each(|c| *c = 0);
                let mut l: i64 = 0;
                for _ in 0..t {
                    match rng.random_range(0..denom) {
                        0 => l += 1,
                        1 => l -= 1,
                        2 => coeffs[(l + t as i64) as usize] += 1,
                        3 => coeffs[(l + t as i64) as usize] -= 1,
                        _ => {}
                    }
                }
                if l == 0 && test.is_zero(&coeffs) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let n = samples as f64;
    let estimate = hits as f64 / n;
    let sigma = (estimate * (1.0 - estimate) / n).sqrt();
    Ok(McEstimate {
        t,
        samples,
        seed,
        hits,
        estimate,
        sigma,
        ci_low: (estimate - Z95 * sigma).max(0.0),
        ci_high: (estimate + Z95 * sigma).min(1.0),
    })
}
