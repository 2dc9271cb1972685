use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::torus::Angle;

/// Dense complex matrix for small dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix(pub DMatrix<Complex64>);

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        ComplexMatrix(DMatrix::identity(n, n))
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        ComplexMatrix(DMatrix::from_fn(rows, cols, f))
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.0[(i, j)] = z;
    }

    pub fn adjoint(&self) -> Self {
        ComplexMatrix(self.0.adjoint())
    }

    pub fn mul(&self, other: &ComplexMatrix) -> Self {
        ComplexMatrix(&self.0 * &other.0)
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Self {
        ComplexMatrix(&self.0 - &other.0)
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    /// Largest singular value.
    pub fn op_norm(&self) -> f64 {
        if self.0.is_empty() {
            return 0.0;
        }
        self.0.clone().singular_values().max()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `‖M*M − I‖`.
    pub fn unitarity_error(&self) -> f64 {
        self.adjoint().mul(self).sub(&ComplexMatrix::identity(self.cols())).op_norm()
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows() {
            let row: Vec<String> = (0..self.cols())
                .map(|j| {
                    let z = self.get(i, j);
                    format!("{:.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// One nonzero entry `scale · e^{2πi·phase}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Weight {
    pub phase: Angle,
    pub scale: f64,
}

impl Weight {
    pub fn unit(phase: Angle) -> Self {
        Weight { phase, scale: 1.0 }
    }

    pub fn from_complex(z: Complex64) -> Self {
        Weight { phase: Angle::approx(z.arg() / std::f64::consts::TAU), scale: z.norm() }
    }

    pub fn mul(&self, other: &Weight) -> Weight {
        Weight { phase: self.phase.add(&other.phase), scale: self.scale * other.scale }
    }

    pub fn inv(&self) -> Weight {
        Weight { phase: self.phase.neg(), scale: 1.0 / self.scale }
    }

    pub fn conj(&self) -> Weight {
        Weight { phase: self.phase.neg(), scale: self.scale }
    }

    pub fn pow(&self, k: i64) -> Weight {
        Weight { phase: self.phase.scale_i64(k), scale: self.scale.powi(k as i32) }
    }

    pub fn to_complex(&self) -> Complex64 {
        self.phase.to_unit() * self.scale
    }

    pub fn is_exact(&self) -> bool {
        self.phase.is_exact() && self.scale == 1.0
    }
}

/// A generalized permutation matrix: column `j` has its single nonzero entry
/// `weights[j]` in row `perm[j]`. Products and inverses stay exact when every
/// phase is rational and every scale is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialMatrix {
    perm: Vec<usize>,
    weights: Vec<Weight>,
}

impl MonomialMatrix {
    pub fn new(perm: Vec<usize>, weights: Vec<Weight>) -> Self {
        assert_eq!(perm.len(), weights.len());
        debug_assert!({
            let mut seen = vec![false; perm.len()];
            perm.iter().all(|&r| !std::mem::replace(&mut seen[r], true))
        });
        MonomialMatrix { perm, weights }
    }

    pub fn identity(n: usize) -> Self {
        MonomialMatrix::new((0..n).collect(), vec![Weight::unit(Angle::zero()); n])
    }

    pub fn diagonal(phases: Vec<Angle>) -> Self {
        let n = phases.len();
        MonomialMatrix::new((0..n).collect(), phases.into_iter().map(Weight::unit).collect())
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn is_exact(&self) -> bool {
        self.weights.iter().all(Weight::is_exact)
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &r)| j == r)
    }

    pub fn mul(&self, other: &MonomialMatrix) -> MonomialMatrix {
        assert_eq!(self.dim(), other.dim());
        let (perm, weights) = (0..other.dim())
            .map(|j| {
                let mid = other.perm[j];
                (self.perm[mid], self.weights[mid].mul(&other.weights[j]))
            })
            .unzip();
        MonomialMatrix { perm, weights }
    }

    pub fn inverse(&self) -> MonomialMatrix {
        self.transpose_with(Weight::inv)
    }

    pub fn adjoint(&self) -> MonomialMatrix {
        self.transpose_with(Weight::conj)
    }

    fn transpose_with(&self, f: impl Fn(&Weight) -> Weight) -> MonomialMatrix {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut weights = vec![Weight::unit(Angle::zero()); n];
        for j in 0..n {
            perm[self.perm[j]] = j;
            weights[self.perm[j]] = f(&self.weights[j]);
        }
        MonomialMatrix { perm, weights }
    }

    pub fn pow(&self, k: i64) -> MonomialMatrix {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(MonomialMatrix::identity(self.dim()), |acc, _| acc.mul(&base))
    }

    pub fn trace(&self) -> Complex64 {
        self.perm
            .iter()
            .enumerate()
            .filter(|(j, r)| j == *r)
            .map(|(j, _)| self.weights[j].to_complex())
            .sum()
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.dim(), self.dim());
        for (j, (&r, w)) in self.perm.iter().zip(&self.weights).enumerate() {
            m.set(r, j, w.to_complex());
        }
        m
    }

    /// `Some(true/false)` when both sides are exact, `None` otherwise.
    pub fn exact_eq(&self, other: &MonomialMatrix) -> Option<bool> {
        (self.is_exact() && other.is_exact()).then(|| self == other)
    }

    /// Operator-norm distance; exactly 0 for equal exact matrices.
    pub fn distance(&self, other: &MonomialMatrix) -> f64 {
        if let Some(eq) = self.exact_eq(other) {
            if eq {
                return 0.0;
            }
        }
        if self.perm == other.perm {
            // the difference is again monomial, so its norm is its largest entry
            return self
                .weights
                .iter()
                .zip(&other.weights)
                .map(|(a, b)| (a.to_complex() - b.to_complex()).norm())
                .fold(0.0, f64::max);
        }
        self.to_dense().sub(&other.to_dense()).op_norm()
    }

    /// `‖M*M − I‖ = max_j |s_j² − 1|`.
    pub fn unitarity_error(&self) -> f64 {
        self.weights.iter().map(|w| (w.scale * w.scale - 1.0).abs()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
pub(crate) fn unit(z: f64) -> Complex64 {
    Complex64::new(z, 0.0)
}

#[cfg(test)]
pub(crate) fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

#[cfg(test)]
pub(crate) fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}
