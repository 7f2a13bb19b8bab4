use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Smallest number of alternatives a preference may rank.
pub const MIN_ALTERNATIVES: usize = 3;

/// A strict total order over `K` alternatives `0..K`.
///
/// Position 0 holds the most preferred alternative. Ordering between
/// preferences is lexicographic on the ranking, which makes every map keyed
/// by `Preference` iterate in a reproducible order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Preference {
    ranking: Box<[u16]>,
}

impl Preference {
    /// Builds a preference from a ranking, most preferred first.
    ///
    /// ```
    /// use flexcon::Preference;
    ///
    /// let p = Preference::new(vec![2, 0, 1]).unwrap();
    /// assert_eq!(p.best(), 2);
    /// assert!(p.prefers(0, 1));
    /// assert!(Preference::new(vec![0, 0, 1]).is_err());
    /// ```
    pub fn new(ranking: Vec<usize>) -> Result<Self> {
        let k = ranking.len();
        if k < MIN_ALTERNATIVES {
            return Err(Error::argument(format!(
                "a preference needs at least {MIN_ALTERNATIVES} alternatives, got {k}"
            )));
        }
        if k > u16::MAX as usize {
            return Err(Error::Capacity {
                what: "preference",
                k,
                limit: u16::MAX as usize,
            });
        }
        let mut seen = vec![false; k];
        for &a in &ranking {
            if a >= k {
                return Err(Error::argument(format!(
                    "alternative {a} out of range for K={k}"
                )));
            }
            if std::mem::replace(&mut seen[a], true) {
                return Err(Error::argument(format!("alternative {a} ranked twice")));
            }
        }
        Ok(Self::from_valid(
            ranking.into_iter().map(|a| a as u16).collect(),
        ))
    }

    pub(crate) fn from_valid(ranking: Box<[u16]>) -> Self {
        debug_assert!(ranking.len() >= MIN_ALTERNATIVES);
        Self { ranking }
    }

    /// The order `0 ≻ 1 ≻ … ≻ K-1`.
    pub fn identity(k: usize) -> Result<Self> {
        Self::new((0..k).collect())
    }

    /// Number of alternatives.
    pub fn k(&self) -> usize {
        self.ranking.len()
    }

    /// Alternative at rank position `pos` (0 = top).
    pub fn at(&self, pos: usize) -> usize {
        self.ranking[pos] as usize
    }

    /// Top-ranked alternative.
    pub fn best(&self) -> usize {
        self.at(0)
    }

    pub fn alternatives(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.ranking.iter().map(|&a| a as usize)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.alternatives().collect()
    }

    pub(crate) fn raw(&self) -> &[u16] {
        &self.ranking
    }

    /// `positions()[a]` is the rank position of alternative `a`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.k()];
        for (i, &a) in self.ranking.iter().enumerate() {
            pos[a as usize] = i;
        }
        pos
    }

    /// Rank position of alternative `a`.
    pub fn position_of(&self, a: usize) -> Option<usize> {
        self.ranking.iter().position(|&x| x as usize == a)
    }

    /// True iff `a` is ranked strictly above `b`.
    ///
    /// # Panics
    ///
    /// If either alternative is out of range.
    pub fn prefers(&self, a: usize, b: usize) -> bool {
        let pa = self.position_of(a).expect("alternative out of range");
        let pb = self.position_of(b).expect("alternative out of range");
        pa < pb
    }

    pub fn reversed(&self) -> Self {
        let mut r = self.ranking.clone();
        r.reverse();
        Self::from_valid(r)
    }

    /// Renders the ranking with display names, e.g. `b > a > c`.
    pub fn display_with<S: AsRef<str>>(&self, names: &[S]) -> String {
        self.alternatives()
            .map(|a| {
                names
                    .get(a)
                    .map(|s| s.as_ref().to_string())
                    .unwrap_or_else(|| a.to_string())
            })
            .collect::<Vec<_>>()
            .join(" > ")
    }
}

impl fmt::Debug for Preference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Preference{self}")
    }
}

impl fmt::Display for Preference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.ranking.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl TryFrom<Vec<usize>> for Preference {
    type Error = Error;

    fn try_from(ranking: Vec<usize>) -> Result<Self> {
        Self::new(ranking)
    }
}

impl Serialize for Preference {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.ranking.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Preference {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let ranking = Vec::<usize>::deserialize(deserializer)?;
        Preference::new(ranking).map_err(serde::de::Error::custom)
    }
}
