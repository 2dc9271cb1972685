use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::block::{build_block, BlockRep};
use super::matrix::MonomialMatrix;
use crate::dynamics::{cmp_angles, enumerate_characters, Character};
use crate::error::{Error, Result};
use crate::exactalg::{Context, GroupElement};
use crate::torus::Angle;

/// Entries below this operator-norm distance count as equal in
/// [`separation_check`].
pub const SEPARATION_TOL: f64 = 1e-9;

/// `{0, 1/4, (√5 − 1)/2}`.
pub fn default_x_schedule() -> Vec<Angle> {
    vec![Angle::zero(), Angle::ratio(1, 4), Angle::approx((5f64.sqrt() - 1.0) / 2.0)]
}

#[derive(Clone, Debug)]
pub struct FamilyBlock {
    pub q: usize,
    /// Index of the orbit representative among the period-`q` orbits.
    pub char_index: usize,
    pub x_index: usize,
    pub rep: BlockRep,
}

/// Finite truncation `⊕ π_{x,χ}` over orbit representatives of least period
/// `q ≤ qmax` and a schedule of `x` values.
#[derive(Clone, Debug)]
pub struct RepFamily {
    ctx: Arc<Context>,
    xs: Vec<Angle>,
    blocks: Vec<FamilyBlock>,
}

impl RepFamily {
    pub fn blocks(&self) -> &[FamilyBlock] {
        &self.blocks
    }

    pub fn x_schedule(&self) -> &[Angle] {
        &self.xs
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn total_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.q).sum()
    }

    /// Number of blocks of dimension `q`.
    pub fn blocks_of_dim(&self, q: usize) -> usize {
        self.blocks.iter().filter(|b| b.q == q).count()
    }

    pub fn max_q(&self) -> usize {
        self.blocks.iter().map(|b| b.q).max().unwrap_or(0)
    }

    /// `Π(g)` on every block.
    pub fn eval(&self, g: &GroupElement) -> Result<Vec<MonomialMatrix>> {
        self.blocks.iter().map(|b| b.rep.eval(g)).collect()
    }
}

/// Orbit representatives of the characters with least period exactly `q`:
/// the lexicographically smallest rotation of each shift orbit.
pub fn orbit_representatives(chars: &[Character], q: usize) -> Vec<Character> {
    let mut reps: Vec<Character> = chars
        .iter()
        .filter(|c| c.period() == q && c.is_least_period())
        .map(Character::canonical_rotation)
        .collect();
    reps.sort_by(|x, y| cmp_angles(x.angles(), y.angles()));
    reps.dedup();
    reps
}

pub fn build_family(ctx: &Arc<Context>, qmax: usize, xs: &[Angle]) -> Result<RepFamily> {
    let q_poly = ctx
        .param()
        .polynomial()
        .ok_or_else(|| Error::Unsupported("families need an algebraic parameter".into()))?;
    if qmax == 0 {
        return Err(Error::ZeroPeriod);
    }
    if xs.is_empty() {
        return Err(Error::InvalidParameter("empty x schedule".into()));
    }
    let reps: Vec<Vec<Character>> = (1..=qmax)
        .into_par_iter()
        .map(|q| Ok(orbit_representatives(&enumerate_characters(q_poly, q)?, q)))
        .collect::<Result<_>>()?;
    let mut blocks = Vec::new();
    for (qi, chars) in reps.iter().enumerate() {
        for (char_index, chi) in chars.iter().enumerate() {
            for (x_index, x) in xs.iter().enumerate() {
                let rep = build_block(ctx, chi, x.clone())?;
                blocks.push(FamilyBlock { q: qi + 1, char_index, x_index, rep });
            }
        }
    }
    Ok(RepFamily { ctx: ctx.clone(), xs: xs.to_vec(), blocks })
}

#[derive(Clone, Debug, Serialize)]
pub struct SeparationReport {
    pub separated: bool,
    /// Indices into the element list of a pair no block tells apart.
    pub witness: Option<(usize, usize)>,
}

/// Whether every pair of distinct elements has some block with
/// `‖Π(g) − Π(h)‖ > SEPARATION_TOL`.
pub fn separation_check(family: &RepFamily, elements: &[GroupElement]) -> Result<SeparationReport> {
    let images: Vec<Vec<MonomialMatrix>> = elements.iter().map(|g| family.eval(g)).collect::<Result<_>>()?;
    for i in 0..elements.len() {
        for j in i + 1..elements.len() {
            let apart = images[i].iter().zip(&images[j]).any(|(a, b)| a.distance(b) > SEPARATION_TOL);
            if !apart {
                return Ok(SeparationReport { separated: false, witness: Some((i, j)) });
            }
        }
    }
    Ok(SeparationReport { separated: true, witness: None })
}
