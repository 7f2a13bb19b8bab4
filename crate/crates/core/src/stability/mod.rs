//! Majority relation, scoring rules, single-peakedness, and verification of
//! the guarantees Flexible Consensus provides.

mod majority;
mod scoring;
mod single_peaked;
mod verify;

pub use majority::{majority_relation, weak_condorcet_winners, MajorityRelation};
pub use scoring::{scoring_totals, ScoringRule, BATTERY_RANDOM_RULES, BATTERY_SEED};
pub use single_peaked::{is_single_peaked, single_peaked_axis};
pub use verify::{verify_stability, verify_stability_with, StabilityReport, Violation};
