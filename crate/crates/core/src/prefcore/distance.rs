//! Inversion (Kendall-tau) distance and the pairwise switch.

use crate::error::{Error, Result};
use crate::prefcore::Preference;

/// Number of alternative pairs ranked in opposite order by `p` and `q`.
///
/// Runs in `O(K log K)`: `p` is relabelled into `q`'s positions and the
/// inversions of the resulting sequence are counted by merge sort.
///
/// ```
/// use flexcon::{inversion_distance, Preference};
///
/// let p = Preference::new(vec![0, 2, 1]).unwrap();
/// let q = Preference::new(vec![1, 2, 0]).unwrap();
/// assert_eq!(inversion_distance(&p, &q).unwrap(), 3);
/// ```
pub fn inversion_distance(p: &Preference, q: &Preference) -> Result<usize> {
    if p.k() != q.k() {
        return Err(Error::Dimension {
            expected: p.k(),
            found: q.k(),
        });
    }
    Ok(distance_unchecked(p, &q.positions()))
}

/// Distance from `p` to the preference whose position table is `ref_pos`.
///
/// Callers that compare many preferences against one reference compute the
/// table once.
pub(crate) fn distance_unchecked(p: &Preference, ref_pos: &[usize]) -> usize {
    let mut seq: Vec<u32> = p
        .raw()
        .iter()
        .map(|&a| ref_pos[a as usize] as u32)
        .collect();
    count_inversions(&mut seq)
}

/// Counts pairs `i < j` with `seq[i] > seq[j]`, sorting `seq` in the process.
pub fn count_inversions(seq: &mut [u32]) -> usize {
    let mut buf = vec![0u32; seq.len()];
    sort_count(seq, &mut buf)
}

fn sort_count(seq: &mut [u32], buf: &mut [u32]) -> usize {
    let n = seq.len();
    if n <= 1 {
        return 0;
    }
    let mid = n / 2;
    let mut inv = {
        let (lo, hi) = seq.split_at_mut(mid);
        let (blo, bhi) = buf.split_at_mut(mid);
        sort_count(lo, blo) + sort_count(hi, bhi)
    };

    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if seq[i] <= seq[j] {
            buf[k] = seq[i];
            i += 1;
        } else {
            // every remaining element of the left half exceeds seq[j]
            inv += mid - i;
            buf[k] = seq[j];
            j += 1;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&seq[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&seq[j..n]);
    seq.copy_from_slice(&buf[..n]);
    inv
}

/// Exchanges the positions of alternatives `a` and `b` in `p`.
///
/// This is the bijection between the preferences ranking `b` above `a` and
/// those ranking `a` above `b`. It is an involution.
///
/// ```
/// use flexcon::{apply_switch, Preference};
///
/// // (b, c, a) with a=0, b=1, c=2
/// let p = Preference::new(vec![1, 2, 0]).unwrap();
/// let s = apply_switch(&p, 0, 1).unwrap();
/// assert_eq!(s.to_vec(), vec![0, 2, 1]);
/// assert_eq!(apply_switch(&s, 0, 1).unwrap(), p);
/// ```
pub fn apply_switch(p: &Preference, a: usize, b: usize) -> Result<Preference> {
    let k = p.k();
    if a == b {
        return Err(Error::argument(format!(
            "cannot switch alternative {a} with itself"
        )));
    }
    if a >= k || b >= k {
        return Err(Error::argument(format!(
            "switch ({a},{b}) out of range for K={k}"
        )));
    }
    let mut r: Box<[u16]> = p.raw().into();
    let pa = r.iter().position(|&x| x as usize == a).expect("a in range");
    let pb = r.iter().position(|&x| x as usize == b).expect("b in range");
    r.swap(pa, pb);
    Ok(Preference::from_valid(r))
}
