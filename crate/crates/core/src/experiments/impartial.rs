use rand::Rng;
use rand_distr::{Binomial, Distribution};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::experiments::rng::trial_rng;
use crate::prefcore::{enumerate_preferences, Preference, Profile, MIN_ALTERNATIVES};

/// Impartial-culture process: each of the `K!` preferences independently
/// receives `Binomial(m, 1/K!)` voters, so the expected electorate is `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ImpartialParams {
    pub k: usize,
    pub m: u64,
}

impl ImpartialParams {
    pub fn new(k: usize, m: u64) -> Result<Self> {
        if k < MIN_ALTERNATIVES {
            return Err(Error::argument(format!(
                "K must be >= {MIN_ALTERNATIVES}, got {k}"
            )));
        }
        if m == 0 {
            return Err(Error::argument("m must be >= 1"));
        }
        Ok(Self { k, m })
    }
}

/// Draws one profile over the pre-enumerated preferences `all`.
///
/// The process can produce an empty electorate (probability
/// `(1 - 1/K!)^{m K!}`, negligible for the `m` used in experiments); such
/// draws are rejected and redrawn from the same stream, so the result is
/// conditioned on `n ≥ 1`.
pub fn impartial_profile_with_rng<R: Rng + ?Sized>(
    params: &ImpartialParams,
    all: &[Preference],
    rng: &mut R,
) -> Result<Profile> {
    let binom = Binomial::new(params.m, 1.0 / all.len() as f64)
        .map_err(|e| Error::argument(format!("binomial parameters: {e}")))?;
    loop {
        let counts: Vec<(Preference, u64)> =
            all.iter().map(|p| (p.clone(), binom.sample(rng))).collect();
        if counts.iter().any(|&(_, c)| c > 0) {
            return Profile::from_counts(counts);
        }
    }
}

/// One impartial-culture profile, deterministic in `seed`.
pub fn impartial_profile(params: &ImpartialParams, seed: u64) -> Result<Profile> {
    let all = enumerate_preferences(params.k)?;
    impartial_profile_with_rng(params, &all, &mut trial_rng(seed, 0, 0))
}
