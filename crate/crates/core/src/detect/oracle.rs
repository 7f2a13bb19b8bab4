//! Literal evaluation of the consensus definitions.
//!
//! Everything here is deliberately naive: the distance is an `O(K²)` pair
//! scan and the quantifiers run over every pair of the `K!` preferences.

use crate::detect::report::{ConsensusKind, ConsensusReport, FailureReason};
use crate::error::Result;
use crate::prefcore::{enumerate_preferences, Preference, Profile};

/// Inversion distance by checking every pair of alternatives.
pub fn pair_scan_distance(p: &Preference, q: &Preference) -> usize {
    let pp = p.positions();
    let qp = q.positions();
    let k = p.k();
    let mut d = 0;
    for a in 0..k {
        for b in a + 1..k {
            if (pp[a] < pp[b]) != (qp[a] < qp[b]) {
                d += 1;
            }
        }
    }
    d
}

/// Level-1: (1) `d(≻,≻₀) ≤ d(≻',≻₀) ⇒ μ(≻) ≥ μ(≻')` for all pairs, and
/// (2) some pair has `d(≻,≻₀) < d(≻',≻₀)` and `μ(≻) > μ(≻')`.
fn level1_conditions(mu: &[u64], dist: &[usize]) -> (bool, bool) {
    let n = mu.len();
    let mut cond1 = true;
    let mut cond2 = false;
    for i in 0..n {
        for j in 0..n {
            if dist[i] <= dist[j] && mu[i] < mu[j] {
                cond1 = false;
            }
            if dist[i] < dist[j] && mu[i] > mu[j] {
                cond2 = true;
            }
        }
    }
    (cond1, cond2)
}

/// Flexible: `μ(≻') > μ(≻) ⇒ d(≻',≻₀) ≤ d(≻,≻₀)` for all pairs.
fn flexible_condition(mu: &[u64], dist: &[usize]) -> bool {
    let n = mu.len();
    (0..n).all(|i| (0..n).all(|j| !(mu[j] > mu[i] && dist[j] > dist[i])))
}

/// Reference detector: tries every one of the `K!` preferences as a
/// candidate and checks the definition over all `K! × K!` pairs.
///
/// Fails with a capacity error when `K!` cannot be enumerated.
pub fn brute_force_detect(profile: &Profile, kind: ConsensusKind) -> Result<ConsensusReport> {
    let all = enumerate_preferences(profile.k())?;
    let mu: Vec<u64> = all.iter().map(|p| profile.frequency(p)).collect();
    let max_frequency = profile.max_frequency();

    let mut pivots = Vec::new();
    let mut any_cond1 = false;
    for candidate in &all {
        let dist: Vec<usize> = all
            .iter()
            .map(|p| pair_scan_distance(p, candidate))
            .collect();
        let holds = match kind {
            ConsensusKind::Level1 => {
                let (c1, c2) = level1_conditions(&mu, &dist);
                any_cond1 |= c1;
                c1 && c2
            }
            ConsensusKind::Flexible => flexible_condition(&mu, &dist),
        };
        if holds {
            pivots.push(candidate.clone());
        }
    }

    let Some(first) = pivots.first() else {
        let reason = match kind {
            ConsensusKind::Level1 if any_cond1 => FailureReason::Condition2Violated,
            ConsensusKind::Level1 => FailureReason::Condition1ViolatedAllCandidates,
            ConsensusKind::Flexible => FailureReason::FlexibleCondition1ViolatedAllCandidates,
        };
        return Ok(ConsensusReport::not_found(kind, reason, max_frequency));
    };
    let d_hat = profile
        .entries()
        .map(|(p, _)| pair_scan_distance(p, first))
        .max()
        .unwrap_or(0);
    Ok(ConsensusReport::found(kind, pivots, max_frequency, d_hat))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::Outcome;

    #[test]
    fn pair_scan_matches_example() {
        let p = Preference::new(vec![0, 2, 1]).unwrap();
        let q = Preference::new(vec![1, 2, 0]).unwrap();
        assert_eq!(pair_scan_distance(&p, &q), 3);
    }

    #[test]
    fn unanimous_found_for_both() {
        let p = Preference::new(vec![2, 0, 1]).unwrap();
        let profile = Profile::unanimous(p.clone(), 4).unwrap();
        for kind in [ConsensusKind::Level1, ConsensusKind::Flexible] {
            let r = brute_force_detect(&profile, kind).unwrap();
            assert_eq!(r.outcome, Outcome::Found);
            assert_eq!(r.pivots, vec![p.clone()]);
            assert_eq!(r.d_hat, Some(0));
        }
    }

    #[test]
    fn uniform_violates_condition2() {
        let all = enumerate_preferences(3).unwrap();
        let profile = Profile::from_counts(all.into_iter().map(|p| (p, 2))).unwrap();
        let r = brute_force_detect(&profile, ConsensusKind::Level1).unwrap();
        assert_eq!(r.failure_reason, FailureReason::Condition2Violated);
        let f = brute_force_detect(&profile, ConsensusKind::Flexible).unwrap();
        assert_eq!(f.pivots.len(), 6);
    }

    #[test]
    fn capacity() {
        let p = Preference::identity(9).unwrap();
        let profile = Profile::unanimous(p, 1).unwrap();
        assert!(brute_force_detect(&profile, ConsensusKind::Flexible).is_err());
    }
}
