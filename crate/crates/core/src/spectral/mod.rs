//! Block-diagonal Dirac operators on the family of covariant blocks, with
//! summability reports and commutator norms.

mod dirac;
mod summability;

pub use dirac::{
    block_commutator_norm, commutator_norm, dirac_commuting, dirac_mixed, CommutatorReport, DiracBlock, DiracMode,
    DiracSpec, QMAX_LIMIT,
};
pub use summability::{summability_report, SummabilityReport, Verdict};
