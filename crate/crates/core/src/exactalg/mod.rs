//! Exact integer and rational algebra.

mod group;
mod matrix;
mod params;
mod poly;
mod resultant;

pub use group::{companion_matrix, BElement, Context, GroupElement, Parameter};
pub use matrix::{smith_normal_form, IntMatrix, SmithDecomposition};
pub use params::{params_to_a, DeformationParams, ParameterValue};
pub use poly::{IntPolynomial, Irreducibility, IRREDUCIBILITY_MAX_DEGREE};
pub use resultant::{cyclotomic_difference, resultant, sylvester_matrix};

pub(crate) use poly::{div_rem, to_rational};
