//! Random profile generators, seeded Monte-Carlo sweeps and the analytic
//! probability bounds they are compared against.

mod bounds;
mod impartial;
mod mallows;
mod rng;
mod sweep;

pub use bounds::{
    flexible_lower_bound, flexible_lower_bound_log10, level1_upper_bound, p_equal_approx,
    p_equal_exact, p_equal_laplace, p_equal_monte_carlo, FlexibleBound, Level1Bound,
    EXACT_BOUND_CAP,
};
pub use impartial::{impartial_profile, impartial_profile_with_rng, ImpartialParams};
pub use mallows::{mallows_profile, mallows_profile_with_rng, MallowsParams};
pub use rng::{stable_id, trial_rng, TrialRng};
pub use sweep::{binomial_sigma, run_grid, run_sweep, Detectors, Fraction, Generator, TrialStats};
