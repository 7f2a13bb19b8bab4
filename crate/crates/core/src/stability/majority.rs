use serde::Serialize;

use crate::prefcore::Profile;

/// Pairwise weak-majority relation of a profile.
///
/// `beats(a, b)` holds when at least as many voters rank `a` above `b` as
/// the other way round. On an exact tie both directions hold, so the
/// relation is not antisymmetric.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MajorityRelation {
    k: usize,
    /// `support[a * k + b]` = number of voters ranking `a` above `b`.
    support: Vec<u64>,
}

impl MajorityRelation {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Voters ranking `a` above `b`.
    pub fn support(&self, a: usize, b: usize) -> u64 {
        self.support[a * self.k + b]
    }

    /// `a M b`; false on the diagonal.
    pub fn beats(&self, a: usize, b: usize) -> bool {
        a != b && self.support(a, b) >= self.support(b, a)
    }

    /// `a` beats `b` and `b` does not beat `a`.
    pub fn strictly_beats(&self, a: usize, b: usize) -> bool {
        a != b && self.support(a, b) > self.support(b, a)
    }

    pub fn beats_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.k)
            .map(|a| (0..self.k).map(|b| self.beats(a, b)).collect())
            .collect()
    }
}

/// Weighted pairwise counts over the stored preferences.
pub fn majority_relation(profile: &Profile) -> MajorityRelation {
    let k = profile.k();
    let mut support = vec![0u64; k * k];
    for (pref, freq) in profile.entries() {
        let ranking = pref.to_vec();
        for (i, &a) in ranking.iter().enumerate() {
            for &b in &ranking[i + 1..] {
                support[a * k + b] += freq;
            }
        }
    }
    MajorityRelation { k, support }
}

/// Alternatives beating every other alternative by a weak majority.
///
/// May be empty (majority cycles) or contain several alternatives (ties).
pub fn weak_condorcet_winners(profile: &Profile) -> Vec<usize> {
    let m = majority_relation(profile);
    (0..m.k())
        .filter(|&a| (0..m.k()).all(|b| a == b || m.beats(a, b)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prefcore::Preference;

    fn pref(v: &[usize]) -> Preference {
        Preference::new(v.to_vec()).unwrap()
    }

    #[test]
    fn unanimous() {
        let profile = Profile::unanimous(pref(&[2, 0, 1]), 4).unwrap();
        let m = majority_relation(&profile);
        assert!(m.beats(2, 0) && m.beats(2, 1) && m.beats(0, 1));
        assert!(!m.beats(0, 2) && !m.beats(1, 2) && !m.beats(1, 0));
        assert!(!m.beats(1, 1));
        assert_eq!(weak_condorcet_winners(&profile), vec![2]);
    }

    #[test]
    fn opposite_pair_ties_everywhere() {
        let p = pref(&[0, 1, 2, 3]);
        let profile = Profile::from_counts(vec![(p.reversed(), 3), (p, 3)]).unwrap();
        let m = majority_relation(&profile);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(m.beats(a, b), a != b);
            }
        }
        assert_eq!(weak_condorcet_winners(&profile), vec![0, 1, 2, 3]);
    }

    #[test]
    fn condorcet_cycle_has_no_winner() {
        let profile =
            Profile::from_ballots(vec![pref(&[0, 1, 2]), pref(&[1, 2, 0]), pref(&[2, 0, 1])])
                .unwrap();
        assert!(weak_condorcet_winners(&profile).is_empty());
        let m = majority_relation(&profile);
        assert!(m.strictly_beats(0, 1) && m.strictly_beats(1, 2) && m.strictly_beats(2, 0));
    }
}
