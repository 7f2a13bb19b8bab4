use std::fmt;

use serde::Serialize;

use crate::prefcore::Preference;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConsensusKind {
    Level1,
    Flexible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Found,
    NotFound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureReason {
    /// Every one of the `K!` preferences has the same frequency.
    Condition2Violated,
    Condition1ViolatedAllCandidates,
    FlexibleCondition1ViolatedAllCandidates,
    None,
}

/// Result of a consensus search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsensusReport {
    pub kind: ConsensusKind,
    pub outcome: Outcome,
    /// Every maximal-frequency preference around which the property holds,
    /// in lexicographic order. Empty iff nothing was found.
    pub pivots: Vec<Preference>,
    pub failure_reason: FailureReason,
    /// Largest frequency in the profile.
    pub max_frequency: u64,
    /// Largest distance from a stored preference to the first pivot.
    pub d_hat: Option<usize>,
}

impl ConsensusReport {
    pub(crate) fn found(
        kind: ConsensusKind,
        pivots: Vec<Preference>,
        max_frequency: u64,
        d_hat: usize,
    ) -> Self {
        debug_assert!(!pivots.is_empty());
        Self {
            kind,
            outcome: Outcome::Found,
            pivots,
            failure_reason: FailureReason::None,
            max_frequency,
            d_hat: Some(d_hat),
        }
    }

    pub(crate) fn not_found(
        kind: ConsensusKind,
        reason: FailureReason,
        max_frequency: u64,
    ) -> Self {
        Self {
            kind,
            outcome: Outcome::NotFound,
            pivots: Vec::new(),
            failure_reason: reason,
            max_frequency,
            d_hat: None,
        }
    }

    pub fn is_found(&self) -> bool {
        self.outcome == Outcome::Found
    }

    /// The pivot a first-match search would return.
    pub fn pivot(&self) -> Option<&Preference> {
        self.pivots.first()
    }
}

impl fmt::Display for ConsensusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConsensusKind::Level1 => "level1",
            ConsensusKind::Flexible => "flexible",
        })
    }
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureReason::Condition2Violated => "condition2_violated",
            FailureReason::Condition1ViolatedAllCandidates => "condition1_violated_all_candidates",
            FailureReason::FlexibleCondition1ViolatedAllCandidates => {
                "flexible_condition1_violated_all_candidates"
            }
            FailureReason::None => "none",
        })
    }
}
