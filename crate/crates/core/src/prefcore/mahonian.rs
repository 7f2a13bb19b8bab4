//! Mahonian numbers `T(K, j)`: permutations of `K` elements with exactly `j`
//! inversions.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::prefcore::preference::MIN_ALTERNATIVES;

/// Default largest `K` for which a full table is built.
pub const MAHONIAN_CAP: usize = 20;

/// Row `K` of the Mahonian triangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MahonianTable {
    k: usize,
    counts: Vec<BigUint>,
}

impl MahonianTable {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Largest possible inversion count, `C(K, 2)`.
    pub fn max_inversions(&self) -> usize {
        self.counts.len() - 1
    }

    /// `counts()[j] = T(K, j)` for `j = 0..=C(K,2)`.
    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// `T(K, j)`, zero outside the table.
    pub fn count(&self, j: usize) -> BigUint {
        self.counts.get(j).cloned().unwrap_or_default()
    }

    /// Number of permutations with at most `d` inversions.
    pub fn cumulative(&self, d: usize) -> BigUint {
        let end = d.min(self.max_inversions());
        self.counts[..=end].iter().sum()
    }

    /// Sum of all counts; equals `K!`.
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Counts as `u64`, if every entry fits.
    pub fn counts_u64(&self) -> Option<Vec<u64>> {
        self.counts.iter().map(ToPrimitive::to_u64).collect()
    }
}

/// Builds `T(K, ·)` with the default cap.
///
/// ```
/// use flexcon::mahonian_table;
///
/// let t = mahonian_table(4).unwrap();
/// assert_eq!(t.counts_u64().unwrap(), vec![1, 3, 5, 6, 5, 3, 1]);
/// ```
pub fn mahonian_table(k: usize) -> Result<MahonianTable> {
    mahonian_table_capped(k, MAHONIAN_CAP)
}

/// Builds `T(K, ·)` via `T(K, j) = Σ_{i=0}^{min(K-1, j)} T(K-1, j-i)`.
pub fn mahonian_table_capped(k: usize, cap: usize) -> Result<MahonianTable> {
    if k < MIN_ALTERNATIVES {
        return Err(Error::argument(format!(
            "Mahonian table needs K >= {MIN_ALTERNATIVES}, got {k}"
        )));
    }
    if k > cap {
        return Err(Error::Capacity {
            what: "Mahonian table",
            k,
            limit: cap,
        });
    }
    // row for K = 1
    let mut row: Vec<BigUint> = vec![BigUint::one()];
    for size in 2..=k {
        let width = size * (size - 1) / 2 + 1;
        // prefix[j] = Σ_{i<j} row[i], so a window sum is one subtraction
        let mut prefix = Vec::with_capacity(row.len() + 1);
        prefix.push(BigUint::zero());
        for c in &row {
            let next = prefix.last().unwrap() + c;
            prefix.push(next);
        }
        let top = row.len();
        let next: Vec<BigUint> = (0..width)
            .map(|j| {
                let hi = (j + 1).min(top);
                let lo = j.saturating_sub(size - 1).min(hi);
                &prefix[hi] - &prefix[lo]
            })
            .collect();
        row = next;
    }
    Ok(MahonianTable { k, counts: row })
}

/// Number of permutations of `K` elements with at most `d` inversions,
/// saturating at `limit`.
///
/// Works for any `K` because the recurrence only needs the first `d + 1`
/// entries of each row. Exact whenever the true value is below `limit`.
pub fn count_within_saturating(k: usize, d: usize, limit: u64) -> u64 {
    let width = d + 1;
    let mut row = vec![0u64; width];
    row[0] = 1;
    let mut prefix = vec![0u64; width + 1];
    for size in 2..=k {
        for j in 0..width {
            prefix[j + 1] = prefix[j].saturating_add(row[j]).min(limit);
        }
        for (j, slot) in row.iter_mut().enumerate() {
            let lo = j.saturating_sub(size - 1);
            // saturated prefixes may no longer subtract cleanly; clamp
            *slot = if prefix[j + 1] >= limit {
                limit
            } else {
                prefix[j + 1] - prefix[lo]
            };
        }
    }
    row.iter()
        .fold(0u64, |acc, &c| acc.saturating_add(c))
        .min(limit)
}
