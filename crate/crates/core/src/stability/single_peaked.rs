//! Single-peakedness recognition.
//!
//! The axis is built from both ends inward. On any single-peaked axis the
//! alternatives not yet placed form an interval, and each voter's least
//! preferred alternative among them sits at one of the interval's two
//! ends. So at most two distinct "bottom" alternatives may appear, and only
//! they are candidates for the next end position. A placement is accepted
//! when no voter ranks the new alternative below something on each side of
//! it, which is exactly the triple condition for alternatives between the
//! two ends. Dead states are memoized on `(unplaced, left side)`.

use std::collections::HashSet;

use crate::prefcore::Profile;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

struct Search {
    k: usize,
    /// `rank[v][a]` = rank position of alternative `a` for distinct ballot `v`.
    rank: Vec<Vec<usize>>,
    dead: HashSet<(Vec<bool>, Vec<bool>)>,
}

struct State {
    left: Vec<usize>,
    right: Vec<usize>,
    unplaced: Vec<bool>,
    in_left: Vec<bool>,
}

impl Search {
    fn bottoms(&self, st: &State) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .rank
            .iter()
            .filter_map(|r| {
                (0..self.k)
                    .filter(|&a| st.unplaced[a])
                    .max_by_key(|&a| r[a])
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn can_place(&self, st: &State, w: usize, side: Side) -> bool {
        let (outer, far): (&[usize], &[usize]) = match side {
            Side::Left => (&st.left, &st.right),
            Side::Right => (&st.right, &st.left),
        };
        self.rank.iter().all(|r| {
            let above_outer = outer.iter().all(|&o| r[w] < r[o]);
            let above_inner = (0..self.k)
                .filter(|&a| a != w && st.unplaced[a])
                .chain(far.iter().copied())
                .all(|z| r[w] < r[z]);
            above_outer || above_inner
        })
    }

    fn solve(&mut self, st: &mut State) -> bool {
        if !st.unplaced.iter().any(|&u| u) {
            return true;
        }
        let key = (st.unplaced.clone(), st.in_left.clone());
        if self.dead.contains(&key) {
            return false;
        }
        let bottoms = self.bottoms(st);
        if bottoms.len() <= 2 {
            for &w in &bottoms {
                // both ends empty: left and right are mirror images
                let sides: &[Side] = if st.left.is_empty() && st.right.is_empty() {
                    &[Side::Left]
                } else {
                    &[Side::Left, Side::Right]
                };
                for &side in sides {
                    if !self.can_place(st, w, side) {
                        continue;
                    }
                    st.unplaced[w] = false;
                    match side {
                        Side::Left => {
                            st.left.push(w);
                            st.in_left[w] = true;
                        }
                        Side::Right => st.right.push(w),
                    }
                    if self.solve(st) {
                        return true;
                    }
                    match side {
                        Side::Left => {
                            st.left.pop();
                            st.in_left[w] = false;
                        }
                        Side::Right => {
                            st.right.pop();
                        }
                    }
                    st.unplaced[w] = true;
                }
            }
        }
        self.dead.insert(key);
        false
    }
}

/// An axis (left to right) on which every ballot is single-peaked, if any.
pub fn single_peaked_axis(profile: &Profile) -> Option<Vec<usize>> {
    let k = profile.k();
    let mut search = Search {
        k,
        rank: profile.entries().map(|(p, _)| p.positions()).collect(),
        dead: HashSet::new(),
    };
    let mut st = State {
        left: Vec::with_capacity(k),
        right: Vec::with_capacity(k),
        unplaced: vec![true; k],
        in_left: vec![false; k],
    };
    if search.solve(&mut st) {
        let mut axis = st.left;
        axis.extend(st.right.into_iter().rev());
        Some(axis)
    } else {
        None
    }
}

/// Whether some axis makes every ballot single-peaked.
pub fn is_single_peaked(profile: &Profile) -> bool {
    single_peaked_axis(profile).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prefcore::{enumerate_preferences, Preference};

    fn pref(v: &[usize]) -> Preference {
        Preference::new(v.to_vec()).unwrap()
    }

    /// Peak-interval check: every top-i set is contiguous on the axis.
    fn peaked_on(p: &Preference, axis: &[usize]) -> bool {
        let mut where_ = vec![0; axis.len()];
        for (i, &a) in axis.iter().enumerate() {
            where_[a] = i;
        }
        let (mut lo, mut hi) = (where_[p.best()], where_[p.best()]);
        p.alternatives().skip(1).all(|a| {
            let x = where_[a];
            if x + 1 == lo {
                lo = x;
                true
            } else if x == hi + 1 {
                hi = x;
                true
            } else {
                false
            }
        })
    }

    #[test]
    fn unanimous_is_single_peaked() {
        let profile = Profile::unanimous(pref(&[2, 0, 3, 1]), 3).unwrap();
        let axis = single_peaked_axis(&profile).unwrap();
        assert!(peaked_on(&pref(&[2, 0, 3, 1]), &axis));
    }

    #[test]
    fn all_k3_rankings_is_not() {
        let profile = Profile::from_ballots(enumerate_preferences(3).unwrap()).unwrap();
        assert!(!is_single_peaked(&profile));
    }

    #[test]
    fn four_rankings_on_abc() {
        // abc, bac, bca, cba with a=0, b=1, c=2
        let profile = Profile::from_ballots(vec![
            pref(&[0, 1, 2]),
            pref(&[1, 0, 2]),
            pref(&[1, 2, 0]),
            pref(&[2, 1, 0]),
        ])
        .unwrap();
        let axis = single_peaked_axis(&profile).unwrap();
        assert!(axis == vec![0, 1, 2] || axis == vec![2, 1, 0], "{axis:?}");
    }

    #[test]
    fn returned_axis_is_valid() {
        let profile = Profile::from_ballots(vec![
            pref(&[0, 1, 2, 3]),
            pref(&[3, 2, 1, 0]),
            pref(&[1, 2, 0, 3]),
            pref(&[2, 1, 3, 0]),
        ])
        .unwrap();
        let axis = single_peaked_axis(&profile).unwrap();
        for (p, _) in profile.entries() {
            assert!(peaked_on(p, &axis), "{p} on {axis:?}");
        }
    }

    #[test]
    fn wide_profile() {
        let k = 120;
        let axis: Vec<usize> = (0..k).collect();
        let left = Preference::new(axis.clone()).unwrap();
        let right = left.reversed();
        let profile = Profile::from_ballots(vec![left, right]).unwrap();
        assert!(is_single_peaked(&profile));
    }
}
