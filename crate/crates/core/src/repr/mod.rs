//! Finite-dimensional covariant representations `π_{x,χ}` of `G_a` built from
//! periodic characters, and windowed induced representations.

mod block;
mod family;
mod induced;
mod matrix;

pub use block::{
    build_block, build_block_with, char_eval, default_test_elements, verify_covariance, verify_relation, BlockRep,
    Corner, CovarianceReport, RelationReport,
};
pub use family::{
    build_family, default_x_schedule, orbit_representatives, separation_check, FamilyBlock, RepFamily,
    SeparationReport, SEPARATION_TOL,
};
pub use induced::{windowed_induced, WindowSummary, WindowedInduced};
pub use matrix::{ComplexMatrix, MonomialMatrix, Weight};
