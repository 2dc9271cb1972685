//! The solenoid `(S_a, α̂)` dual to `B_a`: periodic points, entropy, the Bohr
//! embedding and classification invariants.

mod bohr;
mod characters;
mod classify;
mod counts;
mod entropy;

pub use bohr::{bohr_embed, bohr_embed_exact, periods_on_window, solenoid_defect};
pub use characters::{circulant, enumerate_characters, Character, ENUMERATION_LIMIT};
pub use classify::{classify, k_groups, ClassificationVerdict, KGroups, Outcome, Witness};
pub use counts::{divisors, entropy_growth_check, fixed_count, least_period_count, ln_big, mobius, GrowthRow};
pub use entropy::{entropy, find_roots, EntropyReport, RootEstimate, DEFAULT_ROOT_TOL};

pub(crate) use characters::cmp_angles;

/// Big integers serialize as decimal strings so JSON consumers never lose digits.
pub(crate) fn ser_bigint<S: serde::Serializer>(x: &num_bigint::BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}
