//! Consensus detection.
//!
//! [`detect_level1`] and [`detect_flexible`] run in time polynomial in the
//! number of distinct ballots: each maximal-frequency candidate is checked
//! by sorting the stored preferences by (frequency desc, distance asc),
//! scanning adjacent pairs, and then counting how many of the `K!`
//! preferences lie within the largest stored distance. That count comes
//! from the Mahonian numbers, so zero-frequency preferences are never
//! enumerated.
//!
//! [`brute_force_detect`] evaluates the definitions literally over all `K!`
//! candidates and all pairs of preferences and serves as the reference the
//! fast path is tested against.

mod oracle;
mod report;

use crate::error::Result;
use crate::prefcore::{
    count_within_saturating, distance_unchecked, factorial, mahonian_table, MahonianTable,
    Preference, Profile, MAHONIAN_CAP,
};

pub use oracle::{brute_force_detect, pair_scan_distance};
pub use report::{ConsensusKind, ConsensusReport, FailureReason, Outcome};

/// Counts permutations within a distance of the candidate.
enum ClosureCounter {
    Exact(MahonianTable),
    /// Above the table cap only comparisons against the (small) number of
    /// stored preferences are needed, so a saturating count suffices.
    Saturating {
        k: usize,
    },
}

impl ClosureCounter {
    fn new(k: usize) -> Self {
        if k <= MAHONIAN_CAP {
            ClosureCounter::Exact(mahonian_table(k).expect("K within table cap"))
        } else {
            ClosureCounter::Saturating { k }
        }
    }

    /// True iff exactly `target` permutations have at most `d` inversions.
    fn within_equals(&self, d: usize, target: u64) -> bool {
        match self {
            ClosureCounter::Exact(t) => t.cumulative(d) == target.into(),
            ClosureCounter::Saturating { k } => {
                count_within_saturating(*k, d, target.saturating_add(1)) == target
            }
        }
    }
}

/// A stored preference placed relative to a candidate.
#[derive(Debug, Clone, Copy)]
struct Row<'a> {
    freq: u64,
    dist: usize,
    pref: &'a Preference,
}

/// Stored preferences ordered by descending frequency, then ascending
/// distance to `candidate`, then lexicographically.
fn sorted_rows<'a>(profile: &'a Profile, candidate: &Preference) -> Vec<Row<'a>> {
    let pos = candidate.positions();
    let mut rows: Vec<Row<'a>> = profile
        .entries()
        .map(|(pref, freq)| Row {
            freq,
            dist: distance_unchecked(pref, &pos),
            pref,
        })
        .collect();
    rows.sort_by(|a, b| {
        b.freq
            .cmp(&a.freq)
            .then(a.dist.cmp(&b.dist))
            .then_with(|| a.pref.cmp(b.pref))
    });
    rows
}

/// Adjacent-pair scan over the sorted rows. Level-1 rejects a frequency
/// drop that does not come with a strict distance increase; flexible only
/// rejects a frequency drop that comes with a strict distance decrease.
fn scan_passes(rows: &[Row<'_>], kind: ConsensusKind) -> bool {
    rows.windows(2).all(|w| {
        let (hi, lo) = (&w[0], &w[1]);
        if hi.freq <= lo.freq {
            return true;
        }
        match kind {
            ConsensusKind::Level1 => hi.dist < lo.dist,
            ConsensusKind::Flexible => hi.dist <= lo.dist,
        }
    })
}

struct CandidateCheck {
    passes: bool,
    d_hat: usize,
}

fn check_candidate(
    profile: &Profile,
    candidate: &Preference,
    kind: ConsensusKind,
    closure: &ClosureCounter,
) -> CandidateCheck {
    let rows = sorted_rows(profile, candidate);
    let d_hat = rows.last().map_or(0, |r| r.dist);
    // d(≻₀,≻₀) = 0 forces a candidate to have maximal frequency
    if profile.frequency(candidate) != profile.max_frequency() {
        return CandidateCheck {
            passes: false,
            d_hat,
        };
    }
    if !scan_passes(&rows, kind) {
        return CandidateCheck {
            passes: false,
            d_hat,
        };
    }
    let passes = match kind {
        // every preference within d̂ must be stored
        ConsensusKind::Level1 => closure.within_equals(d_hat, profile.n_distinct() as u64),
        // every preference strictly within d̂ must be stored
        ConsensusKind::Flexible => {
            if d_hat == 0 {
                true
            } else {
                let inner = rows.iter().filter(|r| r.dist < d_hat).count() as u64;
                closure.within_equals(d_hat - 1, inner)
            }
        }
    };
    CandidateCheck { passes, d_hat }
}

/// Whether Condition 1 holds around `candidate`: every strictly more
/// frequent preference is strictly closer, zero-frequency preferences
/// included.
///
/// Returns `false` (not an error) for a candidate without maximal frequency.
pub fn check_condition1(profile: &Profile, candidate: &Preference) -> Result<bool> {
    profile.check_k(candidate)?;
    let closure = ClosureCounter::new(profile.k());
    Ok(check_candidate(profile, candidate, ConsensusKind::Level1, &closure).passes)
}

/// Whether Flexible Condition 1 holds around `candidate`: every strictly
/// more frequent preference is weakly closer.
pub fn check_flexible_condition1(profile: &Profile, candidate: &Preference) -> Result<bool> {
    profile.check_k(candidate)?;
    let closure = ClosureCounter::new(profile.k());
    Ok(check_candidate(profile, candidate, ConsensusKind::Flexible, &closure).passes)
}

/// Only the adjacent-pair stage of the condition check, restricted to
/// stored preferences. Exposed so that the adjacency argument can be tested
/// against an all-pairs scan.
pub fn adjacent_scan(
    profile: &Profile,
    candidate: &Preference,
    kind: ConsensusKind,
) -> Result<bool> {
    profile.check_k(candidate)?;
    Ok(scan_passes(&sorted_rows(profile, candidate), kind))
}

fn detect(profile: &Profile, kind: ConsensusKind) -> ConsensusReport {
    let max_frequency = profile.max_frequency();
    let closure = ClosureCounter::new(profile.k());

    if kind == ConsensusKind::Level1 {
        let all_equal = profile.entries().all(|(_, f)| f == max_frequency);
        let complete = factorial(profile.k()) == Some(profile.n_distinct() as u64);
        if all_equal && complete {
            return ConsensusReport::not_found(
                kind,
                FailureReason::Condition2Violated,
                max_frequency,
            );
        }
    }

    let mut pivots = Vec::new();
    let mut d_hat = None;
    for candidate in profile.max_frequency_preferences() {
        let check = check_candidate(profile, candidate, kind, &closure);
        if check.passes {
            d_hat.get_or_insert(check.d_hat);
            pivots.push(candidate.clone());
        }
    }

    if pivots.is_empty() {
        let reason = match kind {
            ConsensusKind::Level1 => FailureReason::Condition1ViolatedAllCandidates,
            ConsensusKind::Flexible => FailureReason::FlexibleCondition1ViolatedAllCandidates,
        };
        ConsensusReport::not_found(kind, reason, max_frequency)
    } else {
        ConsensusReport::found(kind, pivots, max_frequency, d_hat.unwrap_or(0))
    }
}

/// Detects level-1 consensus.
///
/// All maximal-frequency candidates are checked; `pivots` lists every one
/// that passes, in lexicographic order. The first entry is the preference
/// a first-match search would return.
pub fn detect_level1(profile: &Profile) -> ConsensusReport {
    detect(profile, ConsensusKind::Level1)
}

/// Detects Flexible Consensus. There is no Condition 2 gate.
pub fn detect_flexible(profile: &Profile) -> ConsensusReport {
    detect(profile, ConsensusKind::Flexible)
}
