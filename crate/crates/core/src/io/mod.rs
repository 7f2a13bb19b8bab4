//! PrefLib ingestion and flat serialization of sweep results.

mod preflib;

use serde::Serialize;

use crate::experiments::TrialStats;

pub use preflib::{parse_preflib, HeaderLine, PreflibDocument};

/// One CSV row per grid point. Field order is the column order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    #[serde(rename = "K")]
    pub k: usize,
    pub n_or_m: u64,
    pub phi: f64,
    pub trials: u64,
    pub level1_count: u64,
    pub flexible_count: u64,
    pub single_peaked_count: u64,
    pub level1_frac: f64,
    pub level1_ci_low: f64,
    pub level1_ci_high: f64,
    pub flexible_frac: f64,
    pub flexible_ci_low: f64,
    pub flexible_ci_high: f64,
    pub sp_frac: f64,
    pub sp_ci_low: f64,
    pub sp_ci_high: f64,
    pub seed: u64,
}

impl From<&TrialStats> for SweepRow {
    fn from(s: &TrialStats) -> Self {
        Self {
            k: s.generator.k(),
            n_or_m: s.generator.size(),
            phi: s.generator.phi(),
            trials: s.trials,
            level1_count: s.level1_found,
            flexible_count: s.flexible_found,
            single_peaked_count: s.single_peaked,
            level1_frac: s.level1_fraction.value,
            level1_ci_low: s.level1_fraction.ci_low,
            level1_ci_high: s.level1_fraction.ci_high,
            flexible_frac: s.flexible_fraction.value,
            flexible_ci_low: s.flexible_fraction.ci_low,
            flexible_ci_high: s.flexible_fraction.ci_high,
            sp_frac: s.single_peaked_fraction.value,
            sp_ci_low: s.single_peaked_fraction.ci_low,
            sp_ci_high: s.single_peaked_fraction.ci_high,
            seed: s.seed,
        }
    }
}
