use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactalg::{Context, GroupElement};

/// Largest step count for exact convolution; support grows exponentially.
pub const EXACT_T_LIMIT: usize = 16;
/// Largest radius for [`ball_sizes`].
pub const BALL_RADIUS_LIMIT: usize = 14;

/// Step law on `S = {u, u⁻¹, v, v⁻¹}`, optionally lazy (stay put with
/// probability 1/2).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StepLaw {
    pub lazy: bool,
}

impl StepLaw {
    pub const SIMPLE: StepLaw = StepLaw { lazy: false };
    pub const LAZY: StepLaw = StepLaw { lazy: true };

    /// Integer weights: each generator 1, staying 4 when lazy.
    pub(crate) fn stay_weight(self) -> u128 {
        if self.lazy {
            4
        } else {
            0
        }
    }

    pub fn denominator(self) -> u128 {
        4 + self.stay_weight()
    }
}

pub fn generators(ctx: &Arc<Context>) -> [GroupElement; 4] {
    let u = GroupElement::u(ctx);
    let v = GroupElement::v(ctx);
    [u.clone(), u.inverse(), v.clone(), v.inverse()]
}

/// `p_t` as integer path counts over `denominator^t`.
#[derive(Clone, Debug)]
pub struct Distribution {
    pub t: usize,
    pub law: StepLaw,
    counts: HashMap<GroupElement, u128>,
    ctx: Arc<Context>,
}

impl Distribution {
    pub fn point_mass(ctx: &Arc<Context>, law: StepLaw) -> Self {
        let mut counts = HashMap::new();
        counts.insert(GroupElement::identity(ctx), 1);
        Distribution { t: 0, law, counts, ctx: ctx.clone() }
    }

    pub fn denominator(&self) -> BigInt {
        BigInt::from(self.law.denominator()).pow(self.t as u32)
    }

    pub fn probability(&self, g: &GroupElement) -> BigRational {
        let n = self.counts.get(g).copied().unwrap_or(0);
        BigRational::new(BigInt::from(n), self.denominator())
    }

    /// `p_t(e)`.
    pub fn return_probability(&self) -> BigRational {
        self.probability(&GroupElement::identity(&self.ctx))
    }

    pub fn support_size(&self) -> usize {
        self.counts.len()
    }

    pub fn support(&self) -> impl Iterator<Item = (&GroupElement, &u128)> {
        self.counts.iter()
    }

    pub fn total_mass(&self) -> BigRational {
        let total: u128 = self.counts.values().sum();
        BigRational::new(BigInt::from(total), self.denominator())
    }

    /// `p_t(g) = p_t(g⁻¹)` for every `g` in the support.
    pub fn is_symmetric(&self) -> bool {
        self.counts.iter().all(|(g, n)| self.counts.get(&g.inverse()) == Some(n))
    }

    /// One more convolution with the step law.
    pub fn step(&self) -> Result<Distribution> {
        if self.t >= EXACT_T_LIMIT {
            return Err(Error::guard("exact walk length (use Monte Carlo)", self.t + 1, EXACT_T_LIMIT));
        }
        let gens = generators(&self.ctx);
        let stay = self.law.stay_weight();
        let mut next: HashMap<GroupElement, u128> = HashMap::with_capacity(self.counts.len() * 4);
        for (g, n) in &self.counts {
            if stay > 0 {
                *next.entry(g.clone()).or_insert(0) += n * stay;
            }
            for s in &gens {
                *next.entry(g.compose(s)?).or_insert(0) += n;
            }
        }
        Ok(Distribution { t: self.t + 1, law: self.law, counts: next, ctx: self.ctx.clone() })
    }
}

pub fn exact_distribution(ctx: &Arc<Context>, t: usize, law: StepLaw) -> Result<Distribution> {
    if t > EXACT_T_LIMIT {
        return Err(Error::guard("exact walk length (use Monte Carlo)", t, EXACT_T_LIMIT));
    }
    let mut d = Distribution::point_mass(ctx, law);
    for _ in 0..t {
        d = d.step()?;
    }
    Ok(d)
}

/// `p_t(e)` for `t = 0..=tmax` in a single pass.
pub fn return_probabilities(ctx: &Arc<Context>, tmax: usize, law: StepLaw) -> Result<Vec<BigRational>> {
    if tmax > EXACT_T_LIMIT {
        return Err(Error::guard("exact walk length (use Monte Carlo)", tmax, EXACT_T_LIMIT));
    }
    let mut d = Distribution::point_mass(ctx, law);
    let mut out = vec![BigRational::one()];
    for _ in 0..tmax {
        d = d.step()?;
        out.push(d.return_probability());
    }
    Ok(out)
}

/// `|B(r)|` for `r = 0..=rmax` in the word metric of `S`, by breadth-first search.
pub fn ball_sizes(ctx: &Arc<Context>, rmax: usize) -> Result<Vec<u64>> {
    if rmax > BALL_RADIUS_LIMIT {
        return Err(Error::guard("ball radius", rmax, BALL_RADIUS_LIMIT));
    }
    let gens = generators(ctx);
    let mut seen: HashSet<GroupElement> = HashSet::new();
    let mut frontier = vec![GroupElement::identity(ctx)];
    seen.insert(frontier[0].clone());
    let mut sizes = vec![1u64];
    for _ in 0..rmax {
        let mut next = Vec::new();
        for g in &frontier {
            for s in &gens {
                let h = g.compose(s)?;
                if seen.insert(h.clone()) {
                    next.push(h);
                }
            }
        }
        frontier = next;
        sizes.push(seen.len() as u64);
    }
    Ok(sizes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::IntPolynomial;
    use num_traits::Zero;

    fn bs(m: i64) -> Arc<Context> {
        Context::algebraic(IntPolynomial::from_i64(&[-m, 1]).unwrap())
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// BFS over pairs `(b, l)` acting as `x ↦ m^l x + b` on ℚ.
    fn affine_ball(m: i64, r: usize) -> u64 {
        let m = rat(m, 1);
        let step = |(b, l): &(BigRational, i64), s: usize| -> (BigRational, i64) {
            let ml = m.pow(*l as i32);
            match s {
                0 => (b.clone(), l + 1),
                1 => (b.clone(), l - 1),
                2 => (b + ml, *l),
                _ => (b - ml, *l),
            }
        };
        let mut seen = HashSet::new();
        let mut frontier = vec![(rat(0, 1), 0i64)];
        seen.insert(frontier[0].clone());
        for _ in 0..r {
            let mut next = Vec::new();
            for g in &frontier {
                for s in 0..4 {
                    let h = step(g, s);
                    if seen.insert(h.clone()) {
                        next.push(h);
                    }
                }
            }
            frontier = next;
        }
        seen.len() as u64
    }

    #[test]
    fn small_times() {
        let c = bs(2);
        let p = return_probabilities(&c, 6, StepLaw::SIMPLE).unwrap();
        assert_eq!(p[0], rat(1, 1));
        assert_eq!(p[1], rat(0, 1));
        assert_eq!(p[2], rat(1, 4));
        assert_eq!(p[3], rat(0, 1));
        // closed words of length 5: six of the shape v*·u·v*·U·v*, four of the shape v*·U·v*·u·v*
        assert_eq!(p[5], rat(10, 1024));
    }

    #[test]
    fn mass_and_symmetry() {
        for c in [bs(2), bs(3), Context::transcendental(), Context::z2_control()] {
            for law in [StepLaw::SIMPLE, StepLaw::LAZY] {
                let d = exact_distribution(&c, 6, law).unwrap();
                assert_eq!(d.total_mass(), rat(1, 1));
                assert!(d.is_symmetric());
            }
        }
    }

    #[test]
    fn z2_control_returns() {
        // p_{2t}(e) on ℤ² is C(2t, t)² / 16^t
        let p = return_probabilities(&Context::z2_control(), 8, StepLaw::SIMPLE).unwrap();
        assert_eq!(p[2], rat(4, 16));
        assert_eq!(p[4], rat(36, 256));
        assert_eq!(p[6], rat(400, 4096));
        assert_eq!(p[8], rat(4900, 65536));
        assert!(p.iter().skip(1).step_by(2).all(|x| x.is_zero()));
    }

    #[test]
    fn lazy_walk_is_monotone() {
        let p = return_probabilities(&bs(2), 12, StepLaw::LAZY).unwrap();
        assert!(p.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn balls() {
        let c = bs(2);
        let b = ball_sizes(&c, 3).unwrap();
        assert_eq!(&b[..2], &[1, 5]);
        assert_eq!(b[3], affine_ball(2, 3));
        let z2 = ball_sizes(&Context::z2_control(), 10).unwrap();
        for (r, n) in z2.iter().enumerate() {
            assert_eq!(*n as usize, 2 * r * r + 2 * r + 1);
        }
        assert!(ball_sizes(&c, BALL_RADIUS_LIMIT + 1).is_err());
        assert!(exact_distribution(&c, EXACT_T_LIMIT + 1, StepLaw::SIMPLE).is_err());
    }
}
