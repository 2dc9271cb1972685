use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{companion_matrix, IntPolynomial};
use crate::torus::Angle;

type RatMat = Vec<Vec<BigRational>>;

fn identity(d: usize) -> RatMat {
    (0..d)
        .map(|i| (0..d).map(|j| BigRational::from_integer(BigInt::from((i == j) as i64))).collect())
        .collect()
}

fn mat_mul(x: &RatMat, y: &RatMat) -> RatMat {
    let d = x.len();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (0..d).fold(BigRational::zero(), |acc, k| acc + &x[i][k] * &y[k][j]))
                .collect()
        })
        .collect()
}

fn invert(m: &RatMat) -> Option<RatMat> {
    let d = m.len();
    let mut a = m.clone();
    let mut inv = identity(d);
    for col in 0..d {
        let pivot = (col..d).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..d {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..d {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..d {
                    let (t, s) = (&a[col][j] * &f, &inv[col][j] * &f);
                    a[r][j] -= t;
                    inv[r][j] -= s;
                }
            }
        }
    }
    Some(inv)
}

/// `q_d^{−k}·A^k` for each `k` in `ks`, exactly.
fn step_matrices(q_poly: &IntPolynomial, ks: std::ops::RangeInclusive<i64>) -> Result<Vec<(i64, RatMat)>> {
    let d = q_poly.degree();
    let a = companion_matrix(q_poly);
    let lead = BigRational::from_integer(q_poly.leading().clone());
    let step: RatMat = (0..d)
        .map(|i| (0..d).map(|j| BigRational::from_integer(a[(i, j)].clone()) / &lead).collect())
        .collect();
    let back = invert(&step).ok_or_else(|| Error::InvalidParameter("companion matrix is singular".into()))?;
    let power = |k: i64| -> RatMat {
        let base = if k >= 0 { &step } else { &back };
        (0..k.unsigned_abs()).fold(identity(d), |acc, _| mat_mul(&acc, base))
    };
    let (lo, hi) = (*ks.start(), *ks.end());
    if hi < lo {
        return Ok(Vec::new());
    }
    let mut out = Vec::with_capacity((hi - lo + 1) as usize);
    let mut m = power(lo);
    for k in lo..=hi {
        out.push((k, m.clone()));
        m = mat_mul(&step, &m);
    }
    Ok(out)
}

fn check_dims(q_poly: &IntPolynomial, len: usize) -> Result<()> {
    if len != q_poly.degree() {
        return Err(Error::InvalidParameter(format!(
            "phi has length {len}, expected {}",
            q_poly.degree()
        )));
    }
    Ok(())
}

/// `z_k = q_d^{−k} A^k φ mod 1` for rational `φ`.
pub fn bohr_embed_exact(
    q_poly: &IntPolynomial,
    phi: &[BigRational],
    ks: std::ops::RangeInclusive<i64>,
) -> Result<Vec<(i64, Vec<Angle>)>> {
    check_dims(q_poly, phi.len())?;
    Ok(step_matrices(q_poly, ks)?
        .into_iter()
        .map(|(k, m)| {
            let z = m
                .iter()
                .map(|row| Angle::exact(row.iter().zip(phi).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)))
                .collect();
            (k, z)
        })
        .collect())
}

/// Float version of [`bohr_embed_exact`]; the matrices stay exact, only the
/// final products with `φ` are rounded.
pub fn bohr_embed(q_poly: &IntPolynomial, phi: &[f64], ks: std::ops::RangeInclusive<i64>) -> Result<Vec<(i64, Vec<Angle>)>> {
    check_dims(q_poly, phi.len())?;
    Ok(step_matrices(q_poly, ks)?
        .into_iter()
        .map(|(k, m)| {
            let z = m
                .iter()
                .map(|row| {
                    let s: f64 = row.iter().zip(phi).map(|(x, y)| x.to_f64().unwrap_or(f64::NAN) * y).sum();
                    Angle::approx(s)
                })
                .collect();
            (k, z)
        })
        .collect())
}

/// Largest violation of `q_d·z_{k+1} ≡ A·z_k (mod ℤ^d)` over consecutive
/// entries.
pub fn solenoid_defect(q_poly: &IntPolynomial, orbit: &[(i64, Vec<Angle>)]) -> f64 {
    let a = companion_matrix(q_poly);
    let lead = q_poly.leading();
    let d = q_poly.degree();
    orbit
        .windows(2)
        .filter(|w| w[1].0 == w[0].0 + 1)
        .flat_map(|w| {
            let (z0, z1) = (&w[0].1, &w[1].1);
            (0..d)
                .map(|i| {
                    let lhs = z1[i].scale(lead);
                    let rhs = (0..d).fold(Angle::zero(), |acc, j| acc.add(&z0[j].scale(&a[(i, j)])));
                    lhs.distance(&rhs)
                })
                .collect::<Vec<_>>()
        })
        .fold(0.0, f64::max)
}

/// Periods `p ≤ pmax` with `z_{k+p} = z_k` on every overlapping pair of the
/// window. An empty result is a finite aperiodicity witness.
pub fn periods_on_window(orbit: &[(i64, Vec<Angle>)], pmax: usize, tol: f64) -> Vec<usize> {
    (1..=pmax)
        .filter(|&p| p < orbit.len())
        .filter(|&p| {
            (0..orbit.len() - p).all(|i| {
                orbit[i].1.iter().zip(&orbit[i + p].1).all(|(x, y)| x.approx_eq(y, tol))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c).unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn zero_stays_zero() {
        let orbit = bohr_embed_exact(&poly(&[-1, -1, 1]), &[r(0, 1), r(0, 1)], -3..=3).unwrap();
        assert!(orbit.iter().all(|(_, z)| z.iter().all(Angle::is_zero)));
    }

    #[test]
    fn doubling_third() {
        // A = (2), q_d = 1: z_k = 2^k/3
        let orbit = bohr_embed_exact(&poly(&[-2, 1]), &[r(1, 3)], 0..=2).unwrap();
        let z: Vec<Angle> = orbit.iter().map(|(_, z)| z[0].clone()).collect();
        assert_eq!(z, vec![Angle::ratio(1, 3), Angle::ratio(2, 3), Angle::ratio(1, 3)]);
        assert_eq!(periods_on_window(&orbit, 2, 0.0), vec![2]);
        let back = bohr_embed_exact(&poly(&[-2, 1]), &[r(1, 3)], -2..=0).unwrap();
        assert_eq!(back[0].1[0], Angle::ratio(1, 12));
        assert_eq!(back[1].1[0], Angle::ratio(1, 6));
    }

    #[test]
    fn recursion_holds_non_monic() {
        let q = poly(&[-2, -3, 3]);
        let orbit = bohr_embed_exact(&q, &[r(1, 7), r(2, 5)], -4..=4).unwrap();
        assert_eq!(solenoid_defect(&q, &orbit), 0.0);
        let q = poly(&[-1, 2]);
        let orbit = bohr_embed_exact(&q, &[r(3, 11)], -3..=3).unwrap();
        assert_eq!(solenoid_defect(&q, &orbit), 0.0);
    }

    #[test]
    fn irrational_point_is_aperiodic() {
        let q = poly(&[-1, -1, 1]);
        let orbit = bohr_embed(&q, &[2f64.sqrt(), 3f64.sqrt()], 0..=30).unwrap();
        assert!(solenoid_defect(&q, &orbit) < 1e-9);
        assert!(periods_on_window(&orbit, 12, 1e-9).is_empty());
    }

    #[test]
    fn dimension_mismatch() {
        assert!(bohr_embed(&poly(&[-2, 1]), &[0.1, 0.2], 0..=1).is_err());
    }
}
