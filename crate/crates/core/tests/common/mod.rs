#![allow(dead_code)]

use std::sync::Arc;

use ks_core::exactalg::{Context, GroupElement, IntPolynomial, Parameter};
use rand::Rng;

/// x − 2, x − 3, x² − x − 1, x² − 2x − 1, 2x − 1 (ascending coefficients).
pub const CORPUS: [&[i64]; 5] = [&[-2, 1], &[-3, 1], &[-1, -1, 1], &[-1, -2, 1], &[-1, 2]];

pub fn poly(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64(c).unwrap()
}

pub fn param(c: &[i64]) -> Parameter {
    Parameter::Algebraic(poly(c))
}

pub fn ctx(c: &[i64]) -> Arc<Context> {
    Context::algebraic(poly(c))
}

/// Uniform word in `u^{±1}, v^{±1}` with length in `1..=max_len`.
pub fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> String {
    let len = rng.random_range(1..=max_len);
    (0..len).map(|_| ['u', 'U', 'v', 'V'][rng.random_range(0..4)]).collect()
}

pub fn random_element<R: Rng>(rng: &mut R, c: &Arc<Context>, max_len: usize) -> GroupElement {
    GroupElement::word(c, &random_word(rng, max_len)).unwrap()
}
