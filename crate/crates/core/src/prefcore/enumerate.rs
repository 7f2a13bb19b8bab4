use crate::error::{Error, Result};
use crate::prefcore::preference::{Preference, MIN_ALTERNATIVES};

/// Default largest `K` for which all `K!` preferences are materialized.
pub const ENUMERATION_CAP: usize = 8;

/// All `K!` preferences in lexicographic order.
pub fn enumerate_preferences(k: usize) -> Result<Vec<Preference>> {
    enumerate_preferences_capped(k, ENUMERATION_CAP)
}

pub fn enumerate_preferences_capped(k: usize, cap: usize) -> Result<Vec<Preference>> {
    if k < MIN_ALTERNATIVES {
        return Err(Error::argument(format!(
            "enumeration needs K >= {MIN_ALTERNATIVES}, got {k}"
        )));
    }
    if k > cap {
        return Err(Error::Capacity {
            what: "preference enumeration",
            k,
            limit: cap,
        });
    }
    let total: usize = (1..=k).product();
    let mut out = Vec::with_capacity(total);
    let mut cur: Vec<u16> = (0..k as u16).collect();
    loop {
        out.push(Preference::from_valid(cur.clone().into_boxed_slice()));
        if !next_permutation(&mut cur) {
            break;
        }
    }
    debug_assert_eq!(out.len(), total);
    Ok(out)
}

/// Advances to the lexicographic successor; false when `v` was the last one.
fn next_permutation(v: &mut [u16]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v
        .iter()
        .rposition(|&x| x > v[i])
        .expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// `K!` as a `u64`, if it fits.
pub fn factorial(k: usize) -> Option<u64> {
    (1..=k as u64).try_fold(1u64, |acc, x| acc.checked_mul(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn k3_has_six_sorted_unique() {
        let all = enumerate_preferences(3).unwrap();
        assert_eq!(all.len(), 6);
        let set: BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), 6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all[0].to_vec(), vec![0, 1, 2]);
        assert_eq!(all[5].to_vec(), vec![2, 1, 0]);
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            enumerate_preferences(5).unwrap(),
            enumerate_preferences(5).unwrap()
        );
        assert_eq!(enumerate_preferences(6).unwrap().len(), 720);
    }

    #[test]
    fn capacity() {
        assert!(matches!(
            enumerate_preferences(9),
            Err(Error::Capacity { .. })
        ));
        assert!(enumerate_preferences(2).is_err());
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(3), Some(6));
        assert_eq!(factorial(20), Some(2_432_902_008_176_640_000));
        assert_eq!(factorial(21), None);
    }
}
