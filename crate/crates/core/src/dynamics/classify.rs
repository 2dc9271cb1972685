use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use super::counts::fixed_count;
use super::entropy::entropy;
use crate::error::{Error, Result};
use crate::exactalg::Parameter;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    PeriodicCount {
        q: usize,
        #[serde(serialize_with = "crate::dynamics::ser_bigint")]
        left: BigInt,
        #[serde(serialize_with = "crate::dynamics::ser_bigint")]
        right: BigInt,
    },
    EntropyGap {
        left: f64,
        right: f64,
        error_bound: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome {
    Distinguished { witness: Witness },
    /// `None` means no finite `q` can separate the two.
    IndistinguishableUpTo { qmax: Option<usize> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationVerdict {
    #[serde(flatten)]
    pub outcome: Outcome,
    pub notes: Vec<String>,
}

impl ClassificationVerdict {
    pub fn is_distinguished(&self) -> bool {
        matches!(self.outcome, Outcome::Distinguished { .. })
    }
}

/// Compares the isomorphism invariants of `U_a` and `U_{a′}`: periodic-point
/// counts `c_q` for `q ≤ qmax`, then entropy.
pub fn classify(left: &Parameter, right: &Parameter, qmax: usize, tol: f64) -> Result<ClassificationVerdict> {
    if qmax == 0 {
        return Err(Error::ZeroPeriod);
    }
    let mut notes = Vec::new();
    let (p, p2) = match (left, right) {
        (Parameter::Transcendental, Parameter::Transcendental) => {
            notes.push("all transcendental parameters give isomorphic algebras".into());
            return Ok(ClassificationVerdict { outcome: Outcome::IndistinguishableUpTo { qmax: None }, notes });
        }
        (Parameter::Algebraic(_), Parameter::Transcendental) | (Parameter::Transcendental, Parameter::Algebraic(_)) => {
            let (hl, hr) = (entropy(left, tol)?, entropy(right, tol)?);
            notes.push("algebraic and transcendental parameters never give isomorphic algebras".into());
            let witness = Witness::EntropyGap {
                left: hl.value,
                right: hr.value,
                error_bound: hl.error_bound + hr.error_bound,
            };
            return Ok(ClassificationVerdict { outcome: Outcome::Distinguished { witness }, notes });
        }
        (Parameter::Algebraic(p), Parameter::Algebraic(p2)) => (p, p2),
    };
    if p == p2 {
        notes.push("identical parameters".into());
    } else if &p.reciprocal() == p2 {
        notes.push("reciprocal pair (a and 1/a): expected isomorphic".into());
    }
    for q in 1..=qmax {
        let (cl, cr) = (fixed_count(p, q)?, fixed_count(p2, q)?);
        if cl != cr {
            let witness = Witness::PeriodicCount { q, left: cl, right: cr };
            return Ok(ClassificationVerdict { outcome: Outcome::Distinguished { witness }, notes });
        }
    }
    let (hl, hr) = (entropy(left, tol)?, entropy(right, tol)?);
    let bound = hl.error_bound + hr.error_bound;
    if (hl.value - hr.value).abs() > bound + tol {
        let witness = Witness::EntropyGap { left: hl.value, right: hr.value, error_bound: bound };
        return Ok(ClassificationVerdict { outcome: Outcome::Distinguished { witness }, notes });
    }
    Ok(ClassificationVerdict { outcome: Outcome::IndistinguishableUpTo { qmax: Some(qmax) }, notes })
}

/// `K_0 = ℤ`, `K_1 = ℤ ⊕ ℤ_t` with `t = |l − m|` for `a = m/l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KGroups {
    pub k0_rank: u32,
    pub k1_rank: u32,
    /// Order of the torsion part of `K_1`; 1 means torsion-free.
    pub k1_torsion: u64,
}

impl KGroups {
    pub fn k0(&self) -> String {
        free_part(self.k0_rank)
    }

    pub fn k1(&self) -> String {
        let free = free_part(self.k1_rank);
        if self.k1_torsion == 1 {
            free
        } else {
            format!("{free} ⊕ ℤ_{}", self.k1_torsion)
        }
    }
}

fn free_part(rank: u32) -> String {
    match rank {
        0 => "0".into(),
        1 => "ℤ".into(),
        r => format!("ℤ^{r}"),
    }
}

impl fmt::Display for KGroups {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K0 = {}, K1 = {}", self.k0(), self.k1())
    }
}

/// K-theory of `U_{m/l}` for coprime positive `m ≠ l`.
pub fn k_groups(m: u64, l: u64) -> Result<KGroups> {
    if m == 0 || l == 0 {
        return Err(Error::InvalidParameter("m and l must be positive".into()));
    }
    if m == l {
        return Err(Error::UnitParameter);
    }
    if m.gcd(&l) != 1 {
        return Err(Error::InvalidParameter(format!("{m}/{l} is not in lowest terms")));
    }
    Ok(KGroups { k0_rank: 1, k1_rank: 1, k1_torsion: m.abs_diff(l) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::IntPolynomial;

    fn alg(c: &[i64]) -> Parameter {
        Parameter::Algebraic(IntPolynomial::from_i64(c).unwrap())
    }

    #[test]
    fn reciprocal_pair() {
        let v = classify(&alg(&[-2, 1]), &alg(&[-1, 2]), 12, 1e-9).unwrap();
        assert_eq!(v.outcome, Outcome::IndistinguishableUpTo { qmax: Some(12) });
        assert!(v.notes.iter().any(|n| n.contains("reciprocal")));
    }

    #[test]
    fn different_integers() {
        let v = classify(&alg(&[-2, 1]), &alg(&[-3, 1]), 12, 1e-9).unwrap();
        let witness = Witness::PeriodicCount { q: 1, left: 1.into(), right: 2.into() };
        assert_eq!(v.outcome, Outcome::Distinguished { witness });
    }

    #[test]
    fn algebraic_against_transcendental() {
        let v = classify(&alg(&[-2, 1]), &Parameter::Transcendental, 12, 1e-9).unwrap();
        match v.outcome {
            Outcome::Distinguished { witness: Witness::EntropyGap { left, right, .. } } => {
                assert!((left - 2f64.ln()).abs() < 1e-12);
                assert!(right.is_infinite());
            }
            o => panic!("{o:?}"),
        }
        let v = classify(&Parameter::Transcendental, &Parameter::Transcendental, 12, 1e-9).unwrap();
        assert_eq!(v.outcome, Outcome::IndistinguishableUpTo { qmax: None });
    }

    #[test]
    fn k_theory() {
        assert_eq!(k_groups(1, 3).unwrap().to_string(), "K0 = ℤ, K1 = ℤ ⊕ ℤ_2");
        assert_eq!(k_groups(2, 3).unwrap().k1(), "ℤ");
        assert_eq!(k_groups(2, 1).unwrap().k1(), "ℤ");
        assert_eq!(k_groups(2, 2), Err(Error::UnitParameter));
        assert!(k_groups(2, 4).is_err());
        assert!(k_groups(0, 4).is_err());
    }
}
