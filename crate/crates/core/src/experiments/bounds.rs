//! Analytic bounds on the probability of consensus under impartial culture.

use std::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::experiments::rng::trial_rng;
use crate::prefcore::{factorial, mahonian_table, MIN_ALTERNATIVES};

/// Largest `K` for which [`flexible_lower_bound`] is computed exactly.
pub const EXACT_BOUND_CAP: usize = 7;

fn check_p_equal_args(m: u64, p: f64, t: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::argument("m must be >= 1"));
    }
    if !(p > 0.0 && p < 0.5) {
        return Err(Error::argument(format!("p must lie in (0, 1/2), got {p}")));
    }
    if t == 0 {
        return Err(Error::argument("t must be >= 1"));
    }
    Ok(())
}

/// Closed-form approximation `(2π p (1-p) m)^{(1-t)/2}` to the probability
/// that `t` i.i.d. `Binomial(m, p)` variables are all equal.
///
/// This is the expression used to derive [`level1_upper_bound`]. It
/// overestimates the true asymptotic value by a factor `√t`; see
/// [`p_equal_laplace`].
pub fn p_equal_approx(m: u64, p: f64, t: u32) -> Result<f64> {
    check_p_equal_args(m, p, t)?;
    Ok((2.0 * PI * p * (1.0 - p) * m as f64).powf((1.0 - f64::from(t)) / 2.0))
}

/// Leading-order Laplace asymptotic of the same probability,
/// `(2π p (1-p) m)^{(1-t)/2} / √t`.
///
/// The exponent of the `t`-fold product of binomial masses has curvature
/// `-t / (p (1-p))` at its peak; the `1/√t` comes from that factor `t`.
pub fn p_equal_laplace(m: u64, p: f64, t: u32) -> Result<f64> {
    Ok(p_equal_approx(m, p, t)? / f64::from(t).sqrt())
}

/// `Σ_i Pr[B = i]^t` for `B ~ Binomial(m, p)`, evaluated in log space.
pub fn p_equal_exact(m: u64, p: f64, t: u32) -> Result<f64> {
    check_p_equal_args(m, p, t)?;
    let mf = m as f64;
    let ln_m_fact = ln_gamma(mf + 1.0);
    let (lp, lq) = (p.ln(), (1.0 - p).ln());
    let t = f64::from(t);
    Ok((0..=m)
        .map(|i| {
            let i = i as f64;
            let ln_pmf =
                ln_m_fact - ln_gamma(i + 1.0) - ln_gamma(mf - i + 1.0) + i * lp + (mf - i) * lq;
            (t * ln_pmf).exp()
        })
        .sum())
}

/// Monte-Carlo estimate of the same probability from `samples` draws of
/// `t` binomials each.
pub fn p_equal_monte_carlo(m: u64, p: f64, t: u32, samples: u64, seed: u64) -> Result<f64> {
    check_p_equal_args(m, p, t)?;
    if samples == 0 {
        return Err(Error::argument("samples must be >= 1"));
    }
    let binom = Binomial::new(m, p).map_err(|e| Error::argument(e.to_string()))?;
    const CHUNK: u64 = 1 << 16;
    let chunks = samples.div_ceil(CHUNK);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = trial_rng(seed, u64::from(t), c);
            let count = CHUNK.min(samples - c * CHUNK);
            (0..count)
                .filter(|_| {
                    let first = binom.sample(&mut rng);
                    (1..t).all(|_| binom.sample(&mut rng) == first)
                })
                .count() as u64
        })
        .sum();
    Ok(hits as f64 / samples as f64)
}

/// Upper bound on the probability that the impartial-culture process
/// yields level-1 consensus:
/// `K! / sqrt((2π m / K!)^{K! - C(K,2) - 1})`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Level1Bound {
    pub k: usize,
    pub m: u64,
    /// `K! - C(K,2) - 1`.
    #[serde(serialize_with = "ser_display")]
    pub exponent: BigUint,
    /// Value of the closed form; can exceed 1 for small `m`.
    pub raw: f64,
    /// `min(raw, 1)`.
    pub clamped: f64,
}

pub fn level1_upper_bound(m: u64, k: usize) -> Result<Level1Bound> {
    if k < MIN_ALTERNATIVES {
        return Err(Error::argument(format!(
            "K must be >= {MIN_ALTERNATIVES}, got {k}"
        )));
    }
    if m == 0 {
        return Err(Error::argument("m must be >= 1"));
    }
    let k_fact: BigUint = (1..=k as u64).map(BigUint::from).product();
    let exponent = &k_fact - BigUint::from(k * (k - 1) / 2 + 1);
    let ln_k_fact = ln_gamma(k as f64 + 1.0);
    let e = exponent.to_f64().unwrap_or(f64::INFINITY);
    let ln_base = (2.0 * PI * m as f64).ln() - ln_k_fact;
    let raw = (ln_k_fact - e / 2.0 * ln_base).exp();
    Ok(Level1Bound {
        k,
        m,
        exponent,
        raw,
        clamped: raw.min(1.0),
    })
}

/// Lower bound `Π_{d≥1} T(K,d)! / (K! - 1)!` on the asymptotic probability
/// of Flexible Consensus under impartial culture.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlexibleBound {
    pub k: usize,
    /// Exact value, as `numerator/denominator`.
    #[serde(serialize_with = "ser_ratio")]
    pub exact: BigRational,
    pub value: f64,
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn ser_ratio<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from(n - i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

/// Exact lower bound; limited to `K ≤` [`EXACT_BOUND_CAP`] because the
/// denominator has `(K! - 1)!` size.
pub fn flexible_lower_bound(k: usize) -> Result<FlexibleBound> {
    if k > EXACT_BOUND_CAP {
        return Err(Error::Capacity {
            what: "exact flexible lower bound",
            k,
            limit: EXACT_BOUND_CAP,
        });
    }
    let table = mahonian_table(k)?;
    let sizes = table.counts_u64().expect("small K fits u64");
    // (K!-1)! / Π T_d! is a multinomial coefficient: a product of binomials
    let mut placed = 0u64;
    let mut multinomial = BigUint::one();
    for &s in &sizes[1..] {
        placed += s;
        multinomial *= binomial(placed, s);
    }
    debug_assert_eq!(Some(placed + 1), factorial(k));
    let exact = BigRational::new(BigInt::one(), BigInt::from(multinomial));
    let value = exact
        .to_f64()
        .filter(|v| *v > 0.0)
        .unwrap_or_else(|| 10f64.powf(flexible_lower_bound_log10(k).unwrap_or(f64::NEG_INFINITY)));
    Ok(FlexibleBound { k, exact, value })
}

/// `log10` of the flexible lower bound, for any `K` within the Mahonian cap.
pub fn flexible_lower_bound_log10(k: usize) -> Result<f64> {
    let table = mahonian_table(k)?;
    let ln_num: f64 = table.counts()[1..]
        .iter()
        .map(|c| ln_gamma(c.to_f64().unwrap_or(f64::INFINITY) + 1.0))
        .sum();
    let k_fact = table.total().to_f64().unwrap_or(f64::INFINITY);
    Ok((ln_num - ln_gamma(k_fact)) / std::f64::consts::LN_10)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_equal_t1_is_one() {
        for (m, p) in [(1, 0.1), (2000, 1.0 / 6.0), (10_000_000, 0.49)] {
            assert_eq!(p_equal_approx(m, p, 1).unwrap(), 1.0);
            assert!((p_equal_exact(m.min(5000), p, 1).unwrap() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn p_equal_decays_in_m() {
        let a = p_equal_approx(1_000, 0.2, 2).unwrap();
        let b = p_equal_approx(1_000_000, 0.2, 2).unwrap();
        assert!(b < a / 30.0);
        assert!(p_equal_approx(u64::MAX, 0.2, 2).unwrap() < 1e-8);
    }

    #[test]
    fn p_equal_domain() {
        assert!(p_equal_approx(0, 0.1, 2).is_err());
        assert!(p_equal_approx(10, 0.5, 2).is_err());
        assert!(p_equal_approx(10, 0.0, 2).is_err());
        assert!(p_equal_approx(10, 0.1, 0).is_err());
    }

    #[test]
    fn closed_form_overshoots_by_sqrt_t() {
        // exact sums computed independently at m = 2000, p = 1/6:
        // t=2: 0.016926323333, t=3: 0.000330801027
        let p = 1.0 / 6.0;
        let e2 = p_equal_exact(2000, p, 2).unwrap();
        let e3 = p_equal_exact(2000, p, 3).unwrap();
        assert!((e2 - 0.016_926_323_333).abs() < 1e-10);
        assert!((e3 - 0.000_330_801_027).abs() < 1e-12);
        for (t, e) in [(2, e2), (3, e3)] {
            let ratio = p_equal_approx(2000, p, t).unwrap() / e;
            assert!(
                (ratio - f64::from(t).sqrt()).abs() < 1e-3,
                "t={t} ratio={ratio}"
            );
            let lap = p_equal_laplace(2000, p, t).unwrap() / e;
            assert!((lap - 1.0).abs() < 1e-3);
        }
    }

    #[test]
    fn level1_bound_k3_k4() {
        let b3 = level1_upper_bound(1000, 3).unwrap();
        assert_eq!(b3.exponent, BigUint::from(2u32));
        let expect3 = 6.0 / (2.0 * PI * 1000.0 / 6.0);
        assert!((b3.raw - expect3).abs() < 1e-12 * expect3);

        let b4 = level1_upper_bound(1000, 4).unwrap();
        assert_eq!(b4.exponent, BigUint::from(17u32));
        let expect4 = 24.0 / (2.0 * PI * 1000.0 / 24.0).powf(8.5);
        assert!((b4.raw - expect4).abs() < 1e-9 * expect4);
    }

    #[test]
    fn level1_bound_clamps() {
        let b = level1_upper_bound(1, 3).unwrap();
        assert!(b.raw > 1.0);
        assert_eq!(b.clamped, 1.0);
    }

    #[test]
    fn flexible_bound_k3_is_one_thirtieth() {
        let b = flexible_lower_bound(3).unwrap();
        assert_eq!(b.exact, BigRational::new(1.into(), 30.into()));
        assert!((b.value - 1.0 / 30.0).abs() < 1e-15);
    }

    #[test]
    fn flexible_bound_k4() {
        // 3!·5!·6!·5!·3!·1! / 23!
        let b = flexible_lower_bound(4).unwrap();
        let num: BigInt = [6u64, 120, 720, 120, 6, 1]
            .iter()
            .map(|&x| BigInt::from(x))
            .product();
        let den: BigInt = (1..=23u64).map(BigInt::from).product();
        assert_eq!(b.exact, BigRational::new(num, den));
        assert!((b.value / 1.443_786_779_847_5e-14 - 1.0).abs() < 1e-9);
        let l = flexible_lower_bound_log10(4).unwrap();
        assert!((l - b.value.log10()).abs() < 1e-9);
    }

    #[test]
    fn flexible_bound_capacity() {
        assert!(matches!(
            flexible_lower_bound(8),
            Err(Error::Capacity { .. })
        ));
        assert!(flexible_lower_bound_log10(10).unwrap() < -1000.0);
    }
}
