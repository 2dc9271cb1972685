use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::{fixed_count, ln_big};
use crate::error::{Error, Result};
use crate::exactalg::{GroupElement, Parameter};
use crate::repr::{MonomialMatrix, RepFamily};

/// Largest `qmax` accepted by the Dirac builders; each `c_q` is a resultant
/// of size `q + d`.
pub const QMAX_LIMIT: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiracMode {
    /// Scalar on each block, so `[D, Π(g)] = 0` for every `g`.
    Commuting,
    /// Diagonal in the character basis with spread eigenvalues, so
    /// `[D, Π(v)] = 0` while `[D, Π(u)] ≠ 0` on blocks with `q ≥ 2`.
    Mixed,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiracBlock {
    pub q: usize,
    /// Number of `q`-dimensional blocks carrying this eigenvalue list.
    #[serde(serialize_with = "crate::dynamics::ser_bigint")]
    pub copies: BigInt,
    /// `μ_q`
    pub offset: f64,
    /// Eigenvalues minus the offset, one per basis vector of the block.
    pub spread: Vec<f64>,
}

impl DiracBlock {
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.spread.iter().map(|s| self.offset + s).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DiracSpec {
    pub p: f64,
    pub mode: DiracMode,
    pub blocks: Vec<DiracBlock>,
    /// How `copies` was counted, echoed into reports.
    pub multiplicity_rule: String,
}

/// Per-block spread: zero for the commuting mode, `1 + min(j, q − j)` for the
/// mixed mode. The zigzag keeps neighbouring eigenvalues (including across the
/// corner `q−1 → 0`) at most 1 apart.
fn spread(mode: DiracMode, q: usize) -> Vec<f64> {
    match mode {
        DiracMode::Commuting => vec![0.0; q],
        DiracMode::Mixed => (0..q).map(|j| 1.0 + j.min(q - j) as f64).collect(),
    }
}

fn check_p(mode: DiracMode, p: f64) -> Result<()> {
    let min = match mode {
        DiracMode::Commuting => 1.0,
        DiracMode::Mixed => 2.0,
    };
    if !(p >= min) || !p.is_finite() {
        return Err(Error::InvalidParameter(format!("p must be at least {min}, got {p}")));
    }
    Ok(())
}

/// `μ_q = (q·copies·2^q)^{1/p}`, bumped so offsets strictly increase.
fn assemble(p: f64, mode: DiracMode, copies: Vec<(usize, BigInt)>, rule: &str) -> DiracSpec {
    let mut blocks = Vec::with_capacity(copies.len());
    let mut prev = f64::NEG_INFINITY;
    for (q, n) in copies {
        let weight = if n > BigInt::from(0) { n.clone() } else { BigInt::from(1) };
        let ln_base = (q as f64).ln() + ln_big(&weight) + q as f64 * std::f64::consts::LN_2;
        let mut offset = (ln_base / p).exp();
        if offset <= prev {
            offset = prev + 1.0;
        }
        prev = offset;
        blocks.push(DiracBlock { q, copies: n, offset, spread: spread(mode, q) });
    }
    DiracSpec { p, mode, blocks, multiplicity_rule: rule.to_string() }
}

fn build(param: &Parameter, p: f64, qmax: usize, mode: DiracMode) -> Result<DiracSpec> {
    check_p(mode, p)?;
    let q_poly = param
        .polynomial()
        .ok_or_else(|| Error::Unsupported("Dirac operators need an algebraic parameter".into()))?;
    if qmax > QMAX_LIMIT {
        return Err(Error::guard("qmax", qmax, QMAX_LIMIT));
    }
    let copies = (1..=qmax)
        .into_par_iter()
        .map(|q| Ok((q, fixed_count(q_poly, q)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble(p, mode, copies, "c_q copies of each q-block (all points of period dividing q)"))
}

pub fn dirac_commuting(param: &Parameter, p: f64, qmax: usize) -> Result<DiracSpec> {
    build(param, p, qmax, DiracMode::Commuting)
}

pub fn dirac_mixed(param: &Parameter, p: f64, qmax: usize) -> Result<DiracSpec> {
    build(param, p, qmax, DiracMode::Mixed)
}

impl DiracSpec {
    /// A spec whose multiplicities match a built family: the number of its
    /// `q`-blocks, i.e. orbit representatives times the x-schedule length.
    pub fn aligned_to(family: &RepFamily, p: f64, mode: DiracMode) -> Result<DiracSpec> {
        check_p(mode, p)?;
        let copies = (1..=family.max_q()).map(|q| (q, BigInt::from(family.blocks_of_dim(q)))).collect();
        Ok(assemble(
            p,
            mode,
            copies,
            "one copy per family block (least-period orbit representatives × x values)",
        ))
    }

    pub fn qmax(&self) -> usize {
        self.blocks.iter().map(|b| b.q).max().unwrap_or(0)
    }

    pub fn block(&self, q: usize) -> Option<&DiracBlock> {
        self.blocks.iter().find(|b| b.q == q)
    }

    /// The same spec with every offset moved by `delta`.
    pub fn shifted(&self, delta: f64) -> DiracSpec {
        let mut out = self.clone();
        for b in &mut out.blocks {
            b.offset += delta;
        }
        out
    }
}

/// `‖[D_q, M]‖` for a monomial `M`. The commutator is again monomial with
/// entries `(λ_{σ(j)} − λ_j)·M_{σ(j),j}`; only spread differences enter.
pub fn block_commutator_norm(block: &DiracBlock, m: &MonomialMatrix) -> f64 {
    m.perm()
        .iter()
        .zip(m.weights())
        .enumerate()
        .map(|(j, (&r, w))| (block.spread[r] - block.spread[j]).abs() * w.scale)
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutatorReport {
    pub per_block: Vec<f64>,
    pub supremum: f64,
}

/// `Π(g) = Π(b, 0)·Π(u)^l` with `Π(b, 0)` diagonal, and `D` commutes with
/// diagonal matrices, so `‖[D, Π(g)]‖ = ‖[D, Π(u)^l]‖` and the character
/// phases never need evaluating.
pub fn commutator_norm(spec: &DiracSpec, family: &RepFamily, g: &GroupElement) -> Result<CommutatorReport> {
    if g.context() != family.context() {
        return Err(Error::ContextMismatch);
    }
    let per_block = family
        .blocks()
        .iter()
        .map(|fb| {
            let block = spec.block(fb.q).ok_or(Error::BlockMisalignment(fb.q))?;
            Ok(block_commutator_norm(block, &fb.rep.shift_power(g.l)))
        })
        .collect::<Result<Vec<f64>>>()?;
    let supremum = per_block.iter().copied().fold(0.0, f64::max);
    Ok(CommutatorReport { per_block, supremum })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Context, IntPolynomial};
    use crate::repr::{build_family, ComplexMatrix};
    use crate::torus::Angle;
    use num_complex::Complex64;

    fn doubling() -> Parameter {
        Parameter::Algebraic(IntPolynomial::from_i64(&[-2, 1]).unwrap())
    }

    #[test]
    fn commuting_schedule() {
        let spec = dirac_commuting(&doubling(), 2.0, 3).unwrap();
        assert!((spec.blocks[0].offset - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(spec.blocks[0].eigenvalues().len(), 1);
        let spec = dirac_commuting(&doubling(), 4.0, 1).unwrap();
        assert!((spec.blocks[0].offset - 2f64.powf(0.25)).abs() < 1e-15);
        assert!(spec.blocks.windows(2).all(|w| w[0].offset < w[1].offset));
    }

    #[test]
    fn parameter_checks() {
        assert!(dirac_mixed(&doubling(), 1.5, 3).is_err());
        assert!(dirac_commuting(&doubling(), 0.5, 3).is_err());
        assert!(dirac_commuting(&Parameter::Transcendental, 2.0, 3).is_err());
    }

    #[test]
    fn mixed_commutators() {
        let ctx = Context::algebraic(IntPolynomial::from_i64(&[-2, 1]).unwrap());
        let fam = build_family(&ctx, 4, &[Angle::zero(), Angle::ratio(1, 4)]).unwrap();
        let spec = dirac_mixed(ctx.param(), 2.0, 4).unwrap();
        assert_eq!(spec.block(2).unwrap().spread, vec![1.0, 2.0]);
        let v = commutator_norm(&spec, &fam, &GroupElement::v(&ctx)).unwrap();
        assert_eq!(v.supremum, 0.0);
        let u = commutator_norm(&spec, &fam, &GroupElement::u(&ctx)).unwrap();
        for (fb, n) in fam.blocks().iter().zip(&u.per_block) {
            if fb.q == 1 {
                assert_eq!(*n, 0.0);
            } else {
                assert_eq!(*n, 1.0);
            }
        }
        let commuting = dirac_commuting(ctx.param(), 2.0, 4).unwrap();
        assert_eq!(commutator_norm(&commuting, &fam, &GroupElement::u(&ctx)).unwrap().supremum, 0.0);
        let short = dirac_mixed(ctx.param(), 2.0, 2).unwrap();
        assert_eq!(
            commutator_norm(&short, &fam, &GroupElement::u(&ctx)).unwrap_err(),
            Error::BlockMisalignment(3)
        );
    }

    #[test]
    fn commutator_matches_dense() {
        let ctx = Context::algebraic(IntPolynomial::from_i64(&[-2, 1]).unwrap());
        let fam = build_family(&ctx, 4, &[Angle::ratio(1, 3)]).unwrap();
        let spec = DiracSpec::aligned_to(&fam, 2.0, DiracMode::Mixed).unwrap();
        let g = GroupElement::word(&ctx, "uvUUvvu").unwrap();
        let report = commutator_norm(&spec, &fam, &g).unwrap();
        for (fb, n) in fam.blocks().iter().zip(&report.per_block) {
            let block = spec.block(fb.q).unwrap();
            let d = ComplexMatrix::from_fn(fb.q, fb.q, |i, j| {
                Complex64::new(if i == j { block.spread[i] } else { 0.0 }, 0.0)
            });
            let m = fb.rep.eval_dense(&g).unwrap();
            let dense = d.mul(&m).sub(&m.mul(&d)).op_norm();
            assert!((dense - n).abs() < 1e-12, "{dense} vs {n}");
        }
    }

    #[test]
    fn hand_computed_two_block() {
        // D = diag(μ+1, μ+2), u = [[0, x], [1, 0]] with x = 1: [D, u] = [[0, −1], [1, 0]]
        let ctx = Context::algebraic(IntPolynomial::from_i64(&[-2, 1]).unwrap());
        let fam = build_family(&ctx, 2, &[Angle::zero()]).unwrap();
        let spec = dirac_mixed(ctx.param(), 2.0, 2).unwrap();
        let r = commutator_norm(&spec, &fam, &GroupElement::u(&ctx)).unwrap();
        assert_eq!(r.per_block, vec![0.0, 1.0]);
    }
}
