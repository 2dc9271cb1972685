//! Exact arithmetic in `B_a = {Σ m_i a^{n_i}}` and `G_a = B_a ⋊ ℤ`.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// The deformation parameter `a`, split by its arithmetic nature.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Parameter {
    Algebraic(IntPolynomial),
    /// `B_a ≅ ⊕_ℤ ℤ`; no numeric value is attached.
    Transcendental,
}

impl Parameter {
    pub fn polynomial(&self) -> Option<&IntPolynomial> {
        match self {
            Parameter::Algebraic(q) => Some(q),
            Parameter::Transcendental => None,
        }
    }

    pub fn is_algebraic(&self) -> bool {
        matches!(self, Parameter::Algebraic(_))
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parameter::Algebraic(q) => write!(f, "{q}"),
            Parameter::Transcendental => write!(f, "transcendental"),
        }
    }
}

/// `(A_a)_{i,i+1} = q_d` on the first `d − 1` rows, last row `(A_a)_{d,j} = −q_{j−1}`.
/// Encodes `q_d·a^j = Σ_k (A_a)_{j,k} a^{k−1}` for `j = 1..d`.
pub fn companion_matrix(q: &IntPolynomial) -> IntMatrix {
    let d = q.degree();
    let c = q.coeffs();
    let mut a = IntMatrix::zeros(d, d);
    for i in 0..d - 1 {
        a[(i, i + 1)] = q.leading().clone();
    }
    for j in 0..d {
        a[(d - 1, j)] = -&c[j];
    }
    a
}

type RatVec = Vec<BigRational>;
type RatMat = Vec<Vec<BigRational>>;

fn apply(m: &RatMat, v: &[BigRational]) -> RatVec {
    m.iter()
        .map(|row| row.iter().zip(v).fold(BigRational::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

/// Multiplication by `a^{±1}` on the basis `1, a, …, a^{d−1}`.
#[derive(Debug)]
struct Reducer {
    d: usize,
    mul_a: RatMat,
    mul_a_inv: RatMat,
}

impl Reducer {
    fn new(q: &IntPolynomial) -> Self {
        let d = q.degree();
        let c: Vec<BigRational> = q.coeffs().iter().map(|x| BigRational::from_integer(x.clone())).collect();
        let zero = || vec![vec![BigRational::zero(); d]; d];
        // column j holds the image of a^j
        let mut mul_a = zero();
        for j in 0..d - 1 {
            mul_a[j + 1][j] = BigRational::one();
        }
        for k in 0..d {
            mul_a[k][d - 1] = -&c[k] / &c[d];
        }
        let mut mul_a_inv = zero();
        for j in 1..d {
            mul_a_inv[j - 1][j] = BigRational::one();
        }
        for k in 0..d {
            mul_a_inv[k][0] = -&c[k + 1] / &c[0];
        }
        Reducer { d, mul_a, mul_a_inv }
    }

    fn shift(&self, v: &[BigRational], n: i64) -> RatVec {
        let m = if n >= 0 { &self.mul_a } else { &self.mul_a_inv };
        let mut out = v.to_vec();
        for _ in 0..n.unsigned_abs() {
            out = apply(m, &out);
        }
        out
    }

    /// Canonical vector of `Σ c_n a^n`, Horner-style from the top exponent.
    fn reduce<'a>(&self, terms: impl DoubleEndedIterator<Item = (i64, &'a BigRational)> + Clone) -> RatVec {
        let mut acc = vec![BigRational::zero(); self.d];
        let Some(lo) = terms.clone().next().map(|(n, _)| n) else {
            return acc;
        };
        let mut prev: Option<i64> = None;
        for (n, c) in terms.rev() {
            if let Some(p) = prev {
                acc = self.shift(&acc, p - n);
            }
            acc[0] += c;
            prev = Some(n);
        }
        // acc = Σ c_n a^{n − lo}
        self.shift(&acc, lo)
    }
}

/// Arithmetic context for one parameter `a`; shared by every element built from it.
#[derive(Debug)]
pub struct Context {
    param: Parameter,
    reducer: Option<Reducer>,
    control: bool,
}

impl PartialEq for Context {
    fn eq(&self, other: &Self) -> bool {
        self.param == other.param && self.control == other.control
    }
}

impl Context {
    pub fn new(param: Parameter) -> Arc<Self> {
        let reducer = param.polynomial().map(Reducer::new);
        Arc::new(Context { param, reducer, control: false })
    }

    pub fn algebraic(q: IntPolynomial) -> Arc<Self> {
        Self::new(Parameter::Algebraic(q))
    }

    pub fn transcendental() -> Arc<Self> {
        Self::new(Parameter::Transcendental)
    }

    /// The degenerate `a = 1` group `ℤ ⋊ ℤ = ℤ²`, used only as a
    /// polynomial-growth baseline for the walk diagnostics.
    pub fn z2_control() -> Arc<Self> {
        let q = IntPolynomial::from_coeffs_unchecked(vec![-BigInt::one(), BigInt::one()]);
        let reducer = Some(Reducer::new(&q));
        Arc::new(Context { param: Parameter::Algebraic(q), reducer, control: true })
    }

    pub fn param(&self) -> &Parameter {
        &self.param
    }

    pub fn is_control(&self) -> bool {
        self.control
    }

    /// Rank `d` of `B_a` (algebraic case).
    pub fn rank(&self) -> Option<usize> {
        self.reducer.as_ref().map(|r| r.d)
    }

    /// Canonical vector of a rational Laurent combination `Σ c_n a^n` in the
    /// basis `1, a, …, a^{d−1}`. `None` in the transcendental case.
    pub fn reduce(&self, terms: &BTreeMap<i64, BigRational>) -> Option<Vec<BigRational>> {
        self.reducer.as_ref().map(|r| r.reduce(terms.iter().map(|(n, c)| (*n, c))))
    }

    fn canonical_of(&self, monomials: &BTreeMap<i64, BigInt>) -> Option<Vec<BigRational>> {
        let r = self.reducer.as_ref()?;
        let rat: Vec<(i64, BigRational)> =
            monomials.iter().map(|(n, m)| (*n, BigRational::from_integer(m.clone()))).collect();
        Some(r.reduce(rat.iter().map(|(n, c)| (*n, c))))
    }
}

fn same_context(a: &Arc<Context>, b: &Arc<Context>) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::ContextMismatch)
    }
}

/// An element `Σ m_n a^n` of `B_a`.
///
/// Keeps the integer Laurent representative (characters are evaluated on it)
/// and, for algebraic `a`, the canonical rational vector modulo `Q_a` (used for
/// equality and hashing).
#[derive(Clone)]
pub struct BElement {
    ctx: Arc<Context>,
    monomials: BTreeMap<i64, BigInt>,
    canonical: Option<Vec<BigRational>>,
}

impl BElement {
    pub fn from_monomials(ctx: &Arc<Context>, terms: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut monomials = BTreeMap::new();
        for (n, m) in terms {
            *monomials.entry(n).or_insert_with(BigInt::zero) += m;
        }
        monomials.retain(|_, m: &mut BigInt| !m.is_zero());
        let canonical = ctx.canonical_of(&monomials);
        BElement { ctx: ctx.clone(), monomials, canonical }
    }

    pub fn zero(ctx: &Arc<Context>) -> Self {
        Self::from_monomials(ctx, [])
    }

    pub fn one(ctx: &Arc<Context>) -> Self {
        Self::monomial(ctx, 0, 1)
    }

    /// `m · a^n`.
    pub fn monomial(ctx: &Arc<Context>, n: i64, m: i64) -> Self {
        Self::from_monomials(ctx, [(n, BigInt::from(m))])
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn monomials(&self) -> &BTreeMap<i64, BigInt> {
        &self.monomials
    }

    pub fn canonical(&self) -> Option<&[BigRational]> {
        self.canonical.as_deref()
    }

    pub fn is_zero(&self) -> bool {
        match &self.canonical {
            Some(v) => v.iter().all(|c| c.is_zero()),
            None => self.monomials.is_empty(),
        }
    }

    pub fn add(&self, other: &BElement) -> Result<BElement> {
        same_context(&self.ctx, &other.ctx)?;
        let mut monomials = self.monomials.clone();
        for (n, m) in &other.monomials {
            *monomials.entry(*n).or_insert_with(BigInt::zero) += m;
        }
        monomials.retain(|_, m| !m.is_zero());
        let canonical = match (&self.canonical, &other.canonical) {
            (Some(a), Some(b)) => Some(a.iter().zip(b).map(|(x, y)| x + y).collect()),
            _ => None,
        };
        Ok(BElement { ctx: self.ctx.clone(), monomials, canonical })
    }

    pub fn neg(&self) -> BElement {
        BElement {
            ctx: self.ctx.clone(),
            monomials: self.monomials.iter().map(|(n, m)| (*n, -m)).collect(),
            canonical: self.canonical.as_ref().map(|v| v.iter().map(|c| -c).collect()),
        }
    }

    pub fn sub(&self, other: &BElement) -> Result<BElement> {
        self.add(&other.neg())
    }

    /// Multiplication by `a^n`, i.e. `α_a(n)`.
    pub fn shift(&self, n: i64) -> BElement {
        if n == 0 {
            return self.clone();
        }
        let canonical = self.canonical.as_ref().map(|v| self.ctx.reducer.as_ref().unwrap().shift(v, n));
        BElement {
            ctx: self.ctx.clone(),
            monomials: self.monomials.iter().map(|(k, m)| (k + n, m.clone())).collect(),
            canonical,
        }
    }

    /// Equality in `B_a`: canonical vectors (algebraic) or cancelled monomial lists.
    pub fn equals(&self, other: &BElement) -> Result<bool> {
        same_context(&self.ctx, &other.ctx)?;
        Ok(self.key_eq(other))
    }

    fn key_eq(&self, other: &BElement) -> bool {
        match (&self.canonical, &other.canonical) {
            (Some(a), Some(b)) => a == b,
            _ => self.monomials == other.monomials,
        }
    }

    /// Largest `|n|` among the stored monomials.
    pub fn max_exponent(&self) -> i64 {
        self.monomials.keys().map(|n| n.abs()).max().unwrap_or(0)
    }
}

impl PartialEq for BElement {
    fn eq(&self, other: &Self) -> bool {
        same_context(&self.ctx, &other.ctx).is_ok() && self.key_eq(other)
    }
}

impl Eq for BElement {}

impl Hash for BElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.canonical {
            Some(v) => v.hash(state),
            None => self.monomials.hash(state),
        }
    }
}

impl fmt::Debug for BElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BElement({self})")
    }
}

impl fmt::Display for BElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, m) in self.monomials.iter().rev() {
            let neg = m.is_negative();
            let mag = m.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let power = match n {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{n}"),
            };
            match (mag.is_one(), power.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{power}")?,
                (false, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag}{power}")?,
            }
        }
        Ok(())
    }
}

/// `(b, l) ∈ G_a = B_a ⋊ ℤ`, with `(b,l)(b',l') = (b + a^l b', l + l')`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub b: BElement,
    pub l: i64,
}

impl GroupElement {
    pub fn new(b: BElement, l: i64) -> Self {
        GroupElement { b, l }
    }

    pub fn identity(ctx: &Arc<Context>) -> Self {
        GroupElement { b: BElement::zero(ctx), l: 0 }
    }

    /// `u = (0, 1)`.
    pub fn u(ctx: &Arc<Context>) -> Self {
        GroupElement { b: BElement::zero(ctx), l: 1 }
    }

    /// `v = (1, 0)`.
    pub fn v(ctx: &Arc<Context>) -> Self {
        GroupElement { b: BElement::one(ctx), l: 0 }
    }

    pub fn context(&self) -> &Arc<Context> {
        self.b.context()
    }

    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        let b = self.b.add(&other.b.shift(self.l))?;
        Ok(GroupElement { b, l: self.l + other.l })
    }

    /// `(b, l)⁻¹ = (−a^{−l} b, −l)`.
    pub fn inverse(&self) -> GroupElement {
        GroupElement { b: self.b.shift(-self.l).neg(), l: -self.l }
    }

    pub fn is_identity(&self) -> bool {
        self.l == 0 && self.b.is_zero()
    }

    pub fn pow(&self, k: i64) -> GroupElement {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = GroupElement::identity(self.context());
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(&base).expect("same context");
        }
        acc
    }

    /// Product of a word in `u^{±1}, v^{±1}`. Letters: `'u' 'U' 'v' 'V'`
    /// with capitals for inverses.
    pub fn word(ctx: &Arc<Context>, letters: &str) -> Result<GroupElement> {
        let mut acc = GroupElement::identity(ctx);
        for ch in letters.chars() {
            let g = match ch {
                'u' => GroupElement::u(ctx),
                'U' => GroupElement::u(ctx).inverse(),
                'v' => GroupElement::v(ctx),
                'V' => GroupElement::v(ctx).inverse(),
                _ => return Err(Error::InvalidParameter(format!("unknown generator letter {ch:?}"))),
            };
            acc = acc.compose(&g)?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.b, self.l)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.b, self.l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(c: &[i64]) -> Arc<Context> {
        Context::algebraic(IntPolynomial::from_i64(c).unwrap())
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn companion_examples() {
        let a = companion_matrix(&IntPolynomial::from_i64(&[-1, 3]).unwrap());
        assert_eq!(a, IntMatrix::from_rows(&[vec![1]]));
        let a = companion_matrix(&IntPolynomial::from_i64(&[-5, 1]).unwrap());
        assert_eq!(a, IntMatrix::from_rows(&[vec![5]]));
        let a = companion_matrix(&IntPolynomial::from_i64(&[-1, -1, 1]).unwrap());
        assert_eq!(a, IntMatrix::from_rows(&[vec![0, 1], vec![1, 1]]));
    }

    #[test]
    fn companion_identity_reduces_to_zero() {
        for c in [vec![-1, -1, 1], vec![-1, -2, 1], vec![-2, 0, 0, 3], vec![-1, 2], vec![-3, 1, 0, 5]] {
            let q = IntPolynomial::from_i64(&c).unwrap();
            let cx = Context::algebraic(q.clone());
            let a = companion_matrix(&q);
            let d = q.degree();
            for j in 1..=d {
                let mut terms: Vec<(i64, BigInt)> = vec![(j as i64, q.leading().clone())];
                for k in 1..=d {
                    terms.push((k as i64 - 1, -&a[(j - 1, k - 1)]));
                }
                assert!(BElement::from_monomials(&cx, terms).is_zero(), "Q={q} j={j}");
            }
        }
    }

    #[test]
    fn shift_by_inverse_of_two() {
        let c = ctx(&[-2, 1]);
        let b = BElement::one(&c).shift(-1);
        assert_eq!(b.canonical().unwrap(), &[rat(1, 2)]);
    }

    #[test]
    fn golden_square_reduces() {
        let c = ctx(&[-1, -1, 1]);
        let b = BElement::monomial(&c, 2, 1);
        assert_eq!(b.canonical().unwrap(), &[rat(1, 1), rat(1, 1)]);
        assert_eq!(b, BElement::from_monomials(&c, [(0, 1.into()), (1, 1.into())]));
        let inv = BElement::monomial(&c, -1, 1);
        // a⁻¹ = a − 1
        assert_eq!(inv.canonical().unwrap(), &[rat(-1, 1), rat(1, 1)]);
    }

    #[test]
    fn transcendental_cancellation() {
        let c = Context::transcendental();
        let b = BElement::from_monomials(&c, [(1, 1.into()), (-1, 1.into()), (-1, (-1).into()), (1, (-1).into())]);
        assert!(b.is_zero());
        let x = BElement::monomial(&c, 3, 2);
        assert!(x.sub(&x).unwrap().is_zero());
        assert_ne!(BElement::monomial(&c, 1, 2), BElement::monomial(&c, 0, 1));
    }

    #[test]
    fn reduction_is_idempotent() {
        let c = ctx(&[-1, -2, 5]);
        let b = BElement::from_monomials(&c, [(-3, 2.into()), (4, (-1).into()), (1, 5.into())]);
        let v = b.canonical().unwrap();
        let again: BTreeMap<i64, BigRational> = v.iter().enumerate().map(|(j, c)| (j as i64, c.clone())).collect();
        assert_eq!(c.reduce(&again).unwrap(), v);
    }

    #[test]
    fn context_mismatch() {
        let a = BElement::one(&ctx(&[-2, 1]));
        let b = BElement::one(&ctx(&[-3, 1]));
        assert_eq!(a.add(&b).unwrap_err(), Error::ContextMismatch);
        assert_eq!(a.equals(&b).unwrap_err(), Error::ContextMismatch);
        let g = GroupElement::u(&ctx(&[-2, 1]));
        let h = GroupElement::u(&ctx(&[-3, 1]));
        assert!(g.compose(&h).is_err());
    }

    #[test]
    fn group_law_examples() {
        let c = ctx(&[-2, 1]);
        let (u, v) = (GroupElement::u(&c), GroupElement::v(&c));
        let uv = u.compose(&v).unwrap();
        assert_eq!(uv, GroupElement::new(BElement::monomial(&c, 0, 2), 1));
        assert_eq!(uv, v.pow(2).compose(&u).unwrap());
        let vu = v.compose(&u).unwrap();
        assert_eq!(vu, GroupElement::new(BElement::one(&c), 1));
        assert_ne!(uv, vu);
        let e = GroupElement::identity(&c);
        assert_eq!(uv.compose(&e).unwrap(), uv);
        assert!(uv.compose(&uv.inverse()).unwrap().is_identity());
    }

    #[test]
    fn baumslag_solitar_relation() {
        let c = ctx(&[-3, 1]);
        let lhs = GroupElement::word(&c, "uvU").unwrap();
        assert_eq!(lhs, GroupElement::v(&c).pow(3));
    }
}
