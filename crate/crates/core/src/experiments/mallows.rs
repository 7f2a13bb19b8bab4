use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::experiments::rng::trial_rng;
use crate::prefcore::{inversion_distance, Preference, Profile};

/// Mallows distribution `Prob[≻] = φ^{d(≻, ≻*)} / Z` around a reference
/// order `≻*`, with dispersion `0 < φ ≤ 1`.
#[derive(Debug, Clone, Serialize)]
pub struct MallowsParams {
    reference: Preference,
    phi: f64,
    /// `insert_cdf[i][j]`: probability that the `i`-th reference item is
    /// inserted at a position `≤ j` among the `i + 1` available slots.
    #[serde(skip)]
    insert_cdf: Vec<Vec<f64>>,
}

impl MallowsParams {
    pub fn new(reference: Preference, phi: f64) -> Result<Self> {
        if !(phi > 0.0 && phi <= 1.0) {
            return Err(Error::argument(format!(
                "phi must lie in (0, 1], got {phi}"
            )));
        }
        let insert_cdf = (0..reference.k())
            .map(|i| {
                // slot j creates i - j new inversions
                let w: Vec<f64> = (0..=i).map(|j| phi.powi((i - j) as i32)).collect();
                let total: f64 = w.iter().sum();
                let mut acc = 0.0;
                w.iter()
                    .map(|x| {
                        acc += x / total;
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            reference,
            phi,
            insert_cdf,
        })
    }

    pub fn k(&self) -> usize {
        self.reference.k()
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn reference(&self) -> &Preference {
        &self.reference
    }

    /// Normalizer `Z = Π_{i=1}^{K} (1 + φ + … + φ^{i-1})`.
    pub fn normalizer(&self) -> f64 {
        (1..=self.k())
            .map(|i| (0..i).map(|e| self.phi.powi(e as i32)).sum::<f64>())
            .product()
    }

    /// Exact probability of `pref`.
    pub fn probability(&self, pref: &Preference) -> Result<f64> {
        let d = inversion_distance(pref, &self.reference)?;
        Ok(self.phi.powi(d as i32) / self.normalizer())
    }

    /// One ballot by repeated insertion: the reference items are inserted
    /// in order, each at a slot chosen with weight `φ^{inversions created}`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Preference {
        let k = self.k();
        let mut ranking: Vec<u16> = Vec::with_capacity(k);
        for (i, cdf) in self.insert_cdf.iter().enumerate() {
            let u: f64 = rng.random();
            let slot = cdf.iter().position(|&c| u < c).unwrap_or(i);
            ranking.insert(slot, self.reference.at(i) as u16);
        }
        Preference::from_valid(ranking.into_boxed_slice())
    }
}

/// `n` independent Mallows ballots drawn from `rng`.
pub fn mallows_profile_with_rng<R: Rng + ?Sized>(
    params: &MallowsParams,
    n: u64,
    rng: &mut R,
) -> Result<Profile> {
    if n == 0 {
        return Err(Error::argument("a Mallows profile needs n >= 1"));
    }
    Profile::from_ballots((0..n).map(|_| params.sample(rng)))
}

/// `n` independent Mallows ballots, deterministic in `seed`.
///
/// ```
/// use flexcon::experiments::{mallows_profile, MallowsParams};
/// use flexcon::Preference;
///
/// let params = MallowsParams::new(Preference::identity(4).unwrap(), 0.3).unwrap();
/// let a = mallows_profile(&params, 50, 7).unwrap();
/// assert_eq!(a, mallows_profile(&params, 50, 7).unwrap());
/// assert_eq!(a.n(), 50);
/// ```
pub fn mallows_profile(params: &MallowsParams, n: u64, seed: u64) -> Result<Profile> {
    mallows_profile_with_rng(params, n, &mut trial_rng(seed, 0, 0))
}
