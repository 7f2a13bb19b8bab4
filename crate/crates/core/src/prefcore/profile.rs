use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::prefcore::Preference;

/// A multiset of preferences over a common set of `K` alternatives.
///
/// Only preferences held by at least one voter are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    k: usize,
    entries: BTreeMap<Preference, u64>,
    n: u64,
}

impl Profile {
    /// Aggregates individual ballots.
    ///
    /// ```
    /// use flexcon::{Preference, Profile};
    ///
    /// let p = Preference::new(vec![0, 1, 2]).unwrap();
    /// let q = Preference::new(vec![2, 1, 0]).unwrap();
    /// let profile = Profile::from_ballots(vec![p.clone(), q.clone(), p.clone()]).unwrap();
    /// assert_eq!(profile.n(), 3);
    /// assert_eq!(profile.n_distinct(), 2);
    /// assert_eq!(profile.frequency(&p), 2);
    /// ```
    pub fn from_ballots<I>(ballots: I) -> Result<Self>
    where
        I: IntoIterator<Item = Preference>,
    {
        Self::from_counts(ballots.into_iter().map(|b| (b, 1)))
    }

    /// Aggregates `(preference, count)` pairs; zero counts are skipped and
    /// repeated preferences are summed.
    pub fn from_counts<I>(counts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Preference, u64)>,
    {
        let mut k = None;
        let mut entries = BTreeMap::new();
        let mut n = 0u64;
        for (pref, c) in counts {
            let expected = *k.get_or_insert(pref.k());
            if pref.k() != expected {
                return Err(Error::argument(format!(
                    "ballots mix K={expected} and K={}",
                    pref.k()
                )));
            }
            if c == 0 {
                continue;
            }
            n = n
                .checked_add(c)
                .ok_or_else(|| Error::argument("voter count overflows u64"))?;
            *entries.entry(pref).or_insert(0) += c;
        }
        match k {
            Some(k) if n > 0 => Ok(Self { k, entries, n }),
            _ => Err(Error::argument("a profile needs at least one ballot")),
        }
    }

    /// Profile in which all `n` voters hold `pref`.
    pub fn unanimous(pref: Preference, n: u64) -> Result<Self> {
        Self::from_counts([(pref, n)])
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Total number of voters.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Number of distinct preferences held by some voter.
    pub fn n_distinct(&self) -> usize {
        self.entries.len()
    }

    /// Frequency of `pref`; zero when absent.
    pub fn frequency(&self, pref: &Preference) -> u64 {
        self.entries.get(pref).copied().unwrap_or(0)
    }

    /// Stored preferences with their frequencies, in lexicographic order.
    pub fn entries(&self) -> impl ExactSizeIterator<Item = (&Preference, u64)> + '_ {
        self.entries.iter().map(|(p, &c)| (p, c))
    }

    pub fn max_frequency(&self) -> u64 {
        self.entries.values().copied().max().unwrap_or(0)
    }

    /// Preferences attaining the maximal frequency, in lexicographic order.
    pub fn max_frequency_preferences(&self) -> Vec<&Preference> {
        let m = self.max_frequency();
        self.entries
            .iter()
            .filter(|(_, &c)| c == m)
            .map(|(p, _)| p)
            .collect()
    }

    /// Expands back into one ballot per voter.
    pub fn ballots(&self) -> impl Iterator<Item = &Preference> + '_ {
        self.entries
            .iter()
            .flat_map(|(p, &c)| std::iter::repeat_n(p, c as usize))
    }

    pub(crate) fn check_k(&self, pref: &Preference) -> Result<()> {
        if pref.k() == self.k {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.k,
                found: pref.k(),
            })
        }
    }
}
