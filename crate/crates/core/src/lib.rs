//! Detection of level-1 consensus and Flexible Consensus in preference
//! profiles.
//!
//! A profile exhibits level-1 consensus around a preference `≻₀` when
//! strictly more frequent preferences are always strictly closer to `≻₀` in
//! inversion distance, and not every preference is equally frequent.
//! Flexible Consensus only asks that more frequent preferences be *weakly*
//! closer. Both properties guarantee that `≻₀`'s top alternative is a weak
//! Condorcet winner and wins under every scoring rule.
//!
//! ```
//! use flexcon::{detect_flexible, detect_level1, Outcome, Preference, Profile};
//!
//! let top = Preference::new(vec![0, 1, 2]).unwrap();
//! let profile = Profile::unanimous(top.clone(), 5).unwrap();
//! let report = detect_level1(&profile);
//! assert_eq!(report.outcome, Outcome::Found);
//! assert_eq!(report.pivots, vec![top]);
//! assert_eq!(detect_flexible(&profile).outcome, Outcome::Found);
//! ```
//!
//! The `book/` directory next to the workspace walks through the concepts
//! with runnable snippets; those snippets compile as doc-tests of this crate.

pub mod detect;
pub mod error;
pub mod experiments;
pub mod io;
pub mod prefcore;
pub mod stability;

pub use detect::{
    brute_force_detect, check_condition1, check_flexible_condition1, detect_flexible,
    detect_level1, ConsensusKind, ConsensusReport, FailureReason, Outcome,
};
pub use error::{Error, Result};
pub use prefcore::{
    apply_switch, enumerate_preferences, inversion_distance, mahonian_table, MahonianTable,
    Preference, Profile,
};
pub use stability::{
    is_single_peaked, majority_relation, scoring_totals, verify_stability, weak_condorcet_winners,
    MajorityRelation, ScoringRule, StabilityReport,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/preferences.md")]
    mod preferences {}
    #[doc = include_str!("../../../book/src/mahonian.md")]
    mod mahonian {}
    #[doc = include_str!("../../../book/src/level1.md")]
    mod level1 {}
    #[doc = include_str!("../../../book/src/flexible.md")]
    mod flexible {}
    #[doc = include_str!("../../../book/src/stability.md")]
    mod stability {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/preflib.md")]
    mod preflib {}
}
