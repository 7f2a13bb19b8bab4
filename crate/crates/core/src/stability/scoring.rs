use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::prefcore::Profile;

/// Seed for the random part of [`ScoringRule::battery`].
pub const BATTERY_SEED: u64 = 0x5c0f_e5ba_77e2;

/// Number of random vectors in [`ScoringRule::battery`].
pub const BATTERY_RANDOM_RULES: usize = 5;

/// A positional scoring rule: rank position `i` earns `scores[i]` points.
/// Scores are nonincreasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScoringRule {
    name: String,
    scores: Vec<i64>,
}

impl ScoringRule {
    pub fn new(name: impl Into<String>, scores: Vec<i64>) -> Result<Self> {
        if scores.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::argument(format!(
                "scoring vector must be nonincreasing: {scores:?}"
            )));
        }
        Ok(Self {
            name: name.into(),
            scores,
        })
    }

    pub fn plurality(k: usize) -> Self {
        Self::step(k, 1).named("plurality")
    }

    /// `(K-1, K-2, …, 0)`.
    pub fn borda(k: usize) -> Self {
        Self {
            name: "borda".into(),
            scores: (0..k as i64).rev().collect(),
        }
    }

    /// One point everywhere except last place.
    pub fn veto(k: usize) -> Self {
        Self::step(k, k.saturating_sub(1)).named("veto")
    }

    /// `(1, …, 1, 0, …, 0)` with `cut` leading ones. Every nonincreasing
    /// vector is a constant plus a nonnegative combination of these.
    pub fn step(k: usize, cut: usize) -> Self {
        Self {
            name: format!("step{cut}"),
            scores: (0..k).map(|i| i64::from(i < cut)).collect(),
        }
    }

    fn named(mut self, name: &str) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn scores(&self) -> &[i64] {
        &self.scores
    }

    pub fn k(&self) -> usize {
        self.scores.len()
    }

    /// Plurality, Borda, veto, every step vector, and
    /// [`BATTERY_RANDOM_RULES`] seeded random nonincreasing integer vectors.
    pub fn battery(k: usize) -> Vec<ScoringRule> {
        let mut rules = vec![Self::plurality(k), Self::borda(k), Self::veto(k)];
        rules.extend((1..k).map(|cut| Self::step(k, cut)));
        let mut rng = ChaCha8Rng::seed_from_u64(BATTERY_SEED ^ k as u64);
        for r in 0..BATTERY_RANDOM_RULES {
            let mut level = rng.random_range(-3i64..=3);
            let mut scores = Vec::with_capacity(k);
            for _ in 0..k {
                scores.push(level);
                level -= rng.random_range(0i64..=4);
            }
            rules.push(Self {
                name: format!("random{r}"),
                scores,
            });
        }
        rules
    }
}

/// Total score of each alternative: `Σ μ(≻)·scores[rank of a in ≻]`.
pub fn scoring_totals(profile: &Profile, rule: &ScoringRule) -> Result<Vec<i64>> {
    if rule.k() != profile.k() {
        return Err(Error::Dimension {
            expected: profile.k(),
            found: rule.k(),
        });
    }
    let mut totals = vec![0i64; profile.k()];
    for (pref, freq) in profile.entries() {
        let freq = i64::try_from(freq).map_err(|_| Error::argument("frequency exceeds i64"))?;
        for (pos, a) in pref.alternatives().enumerate() {
            totals[a] += freq * rule.scores[pos];
        }
    }
    Ok(totals)
}
