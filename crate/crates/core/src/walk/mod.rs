//! Simple random walks and ball growth on the Cayley graph of `G_a` with
//! generators `S = {u^{±1}, v^{±1}}`.

mod exact;
mod fit;
mod montecarlo;

pub use exact::{
    ball_sizes, exact_distribution, generators, return_probabilities, Distribution, StepLaw, BALL_RADIUS_LIMIT,
    EXACT_T_LIMIT,
};
pub use fit::{decay_fit, DecayFit, MIN_FIT_POINTS, SLOPE_DRIFT_LIMIT};
pub use montecarlo::{mc_return, McEstimate};
