//! Dynamical, representation-theoretic and spectral invariants of the
//! compactified κ-Minkowski algebras `U_a = C*(B_a ⋊ ℤ)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactalg`]: integer polynomials, resultants, Smith normal form and
//!   exact arithmetic in `B_a` and `G_a = B_a ⋊ ℤ`;
//! * [`dynamics`]: periodic points of the solenoid automorphism, entropy,
//!   classification invariants and K-groups;
//! * [`repr`]: finite-dimensional covariant representations built from
//!   periodic characters;
//! * [`spectral`]: block-diagonal Dirac operators and summability reports;
//! * [`walk`]: random walks and ball growth on the Cayley graph of `G_a`.

// `!(x > 0.0)` style checks are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod error;
pub mod exactalg;
pub mod repr;
pub mod spectral;
pub mod torus;
pub mod walk;

pub use error::{Error, Result};
