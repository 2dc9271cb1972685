use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use serde::Serialize;

use super::matrix::{ComplexMatrix, MonomialMatrix, Weight};
use crate::dynamics::Character;
use crate::error::{Error, Result};
use crate::exactalg::{BElement, Context, GroupElement};
use crate::torus::Angle;

/// `χ(b) = exp(2πi Σ_n m_n θ_{n mod q})`.
pub fn char_eval(chi: &Character, b: &BElement) -> Complex64 {
    chi.eval_angle(b).to_unit()
}

/// The top-right entry of the cyclic shift. Only [`Corner::Phase`] gives a
/// unitary block; [`Corner::Raw`] exists for negative controls.
#[derive(Clone, Debug, PartialEq)]
pub enum Corner {
    Phase(Angle),
    Raw(Complex64),
}

impl Corner {
    fn weight(&self) -> Weight {
        match self {
            Corner::Phase(x) => Weight::unit(x.clone()),
            Corner::Raw(z) => Weight::from_complex(*z),
        }
    }
}

/// The covariant block `π_{x,χ}` of dimension `q`, the period of `χ`.
///
/// `Π(b, 0) = Diag(χ(a^{−s} b))_{s=0..q−1}` and `Π(0, 1)` is the cyclic shift
/// `e_s ↦ e_{s+1}` with `x` in the top-right corner, so that
/// `Π(u)Π(b)Π(u)⁻¹ = Π(ab)` as the group law demands.
#[derive(Clone, Debug)]
pub struct BlockRep {
    ctx: Arc<Context>,
    chi: Character,
    corner: Corner,
}

/// Builds `π_{x,χ}`, refusing characters whose least period is smaller than
/// their length.
pub fn build_block(ctx: &Arc<Context>, chi: &Character, x: Angle) -> Result<BlockRep> {
    build_block_with(ctx, chi, Corner::Phase(x), false)
}

pub fn build_block_with(ctx: &Arc<Context>, chi: &Character, corner: Corner, allow_decomposable: bool) -> Result<BlockRep> {
    if !allow_decomposable && !chi.is_least_period() {
        return Err(Error::NotLeastPeriod { period: chi.period(), least: chi.least_period() });
    }
    Ok(BlockRep { ctx: ctx.clone(), chi: chi.clone(), corner })
}

impl BlockRep {
    pub fn dim(&self) -> usize {
        self.chi.period()
    }

    pub fn character(&self) -> &Character {
        &self.chi
    }

    pub fn corner(&self) -> &Corner {
        &self.corner
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    /// Diagonal angles of `Π(b, 0)`.
    pub fn diagonal_angles(&self, b: &BElement) -> Vec<Angle> {
        (0..self.dim() as i64)
            .map(|s| {
                b.monomials()
                    .iter()
                    .fold(Angle::zero(), |acc, (n, m)| acc.add(&self.chi.angle(n - s).scale(m)))
            })
            .collect()
    }

    /// `Π(0, 1)^l`: column `i` goes to row `(i + l) mod q` with weight
    /// `x^{⌊(i+l)/q⌋}`.
    pub fn shift_power(&self, l: i64) -> MonomialMatrix {
        let q = self.dim() as i64;
        let corner = self.corner.weight();
        let (perm, weights) = (0..q)
            .map(|i| {
                let t = i + l;
                ((t.rem_euclid(q)) as usize, corner.pow(t.div_euclid(q)))
            })
            .unzip();
        MonomialMatrix::new(perm, weights)
    }

    /// `Π(b, l) = Π(b, 0)·Π(0, 1)^l`.
    pub fn eval(&self, g: &GroupElement) -> Result<MonomialMatrix> {
        if g.context() != &self.ctx {
            return Err(Error::ContextMismatch);
        }
        let diag = MonomialMatrix::diagonal(self.diagonal_angles(&g.b));
        Ok(diag.mul(&self.shift_power(g.l)))
    }

    pub fn eval_dense(&self, g: &GroupElement) -> Result<ComplexMatrix> {
        Ok(self.eval(g)?.to_dense())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CovarianceReport {
    /// `max_f ‖u*·ρ(f)·u − ρ(f∘α̂)‖`
    pub max_deviation: f64,
    /// Largest `‖M*M − I‖` over `Π(u)` and the tested `ρ(f)`.
    pub unitarity_error: f64,
    pub exact: bool,
}

impl CovarianceReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_deviation <= tol && self.unitarity_error <= tol
    }
}

/// Test functions `f = χ ↦ χ(aⁿ)` for `|n| ≤ 2` and `χ ↦ χ(1 + a)`.
pub fn default_test_elements(ctx: &Arc<Context>) -> Vec<BElement> {
    let mut out: Vec<BElement> = (-2..=2).map(|n| BElement::monomial(ctx, n, 1)).collect();
    out.push(BElement::from_monomials(ctx, [(0, BigInt::from(1)), (1, BigInt::from(1))]));
    out
}

/// Checks `u*·ρ(b)·u = ρ(a⁻¹b)` on the block for each test element `b`.
pub fn verify_covariance(block: &BlockRep, tests: &[BElement]) -> Result<CovarianceReport> {
    let u = block.shift_power(1);
    let u_adj = u.adjoint();
    let mut max_deviation: f64 = 0.0;
    let mut unitarity_error = u.unitarity_error();
    let mut exact = u.is_exact();
    for b in tests {
        if b.context() != block.context() {
            return Err(Error::ContextMismatch);
        }
        let rho = MonomialMatrix::diagonal(block.diagonal_angles(b));
        let lhs = u_adj.mul(&rho).mul(&u);
        let rhs = MonomialMatrix::diagonal(block.diagonal_angles(&b.shift(-1)));
        exact &= lhs.is_exact() && rhs.is_exact();
        max_deviation = max_deviation.max(lhs.distance(&rhs));
        unitarity_error = unitarity_error.max(rho.unitarity_error());
    }
    Ok(CovarianceReport { max_deviation, unitarity_error, exact })
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub holds: bool,
    pub deviation: f64,
    pub exact: bool,
}

/// `Π(u)Π(v)Π(u)⁻¹ = Π(v)^m` by matrix arithmetic, for the parameter `x − m`.
pub fn verify_relation(block: &BlockRep, m: i64) -> Result<RelationReport> {
    let bs = block.context().param().polynomial().and_then(|p| p.baumslag_solitar_m());
    if bs != Some(BigInt::from(m)) {
        return Err(Error::Unsupported(format!(
            "the relation UVU⁻¹ = V^{m} needs the parameter x - {m}, got {}",
            block.context().param()
        )));
    }
    let ctx = block.context();
    let u = block.eval(&GroupElement::u(ctx))?;
    let v = block.eval(&GroupElement::v(ctx))?;
    let lhs = u.mul(&v).mul(&u.inverse());
    let rhs = v.pow(m);
    let deviation = lhs.distance(&rhs);
    let exact = lhs.is_exact() && rhs.is_exact();
    Ok(RelationReport { holds: deviation <= 1e-12, deviation, exact })
}
