use rayon::prelude::*;
use serde::Serialize;

use crate::detect::{detect_flexible, detect_level1};
use crate::error::{Error, Result};
use crate::experiments::impartial::{impartial_profile_with_rng, ImpartialParams};
use crate::experiments::mallows::{mallows_profile_with_rng, MallowsParams};
use crate::experiments::rng::{stable_id, trial_rng, TrialRng};
use crate::prefcore::{enumerate_preferences, Preference, Profile};
use crate::stability::{is_single_peaked, verify_stability};

/// How each trial's profile is generated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum Generator {
    /// `n` Mallows ballots around the identity order. `phi = 0` yields the
    /// unanimous profile, the limit of the model as `phi → 0`.
    Mallows { k: usize, n: u64, phi: f64 },
    /// Impartial-culture process with expected electorate `m`.
    Impartial { k: usize, m: u64 },
}

impl Generator {
    pub fn k(&self) -> usize {
        match *self {
            Generator::Mallows { k, .. } | Generator::Impartial { k, .. } => k,
        }
    }

    /// `n` for Mallows, `m` for the impartial process.
    pub fn size(&self) -> u64 {
        match *self {
            Generator::Mallows { n, .. } => n,
            Generator::Impartial { m, .. } => m,
        }
    }

    /// `phi`; the impartial process corresponds to `phi = 1`.
    pub fn phi(&self) -> f64 {
        match *self {
            Generator::Mallows { phi, .. } => phi,
            Generator::Impartial { .. } => 1.0,
        }
    }

    pub fn model_name(&self) -> &'static str {
        match self {
            Generator::Mallows { .. } => "mallows",
            Generator::Impartial { .. } => "impartial",
        }
    }

    /// Grid-point id mixed into every trial seed, so a point's results do
    /// not depend on where it sits in a grid.
    fn point_id(&self) -> u64 {
        let desc = match *self {
            Generator::Mallows { k, n, phi } => format!("mallows:{k}:{n}:{:016x}", phi.to_bits()),
            Generator::Impartial { k, m } => format!("impartial:{k}:{m}"),
        };
        stable_id(desc.as_bytes())
    }

    fn prepare(&self) -> Result<Prepared> {
        match *self {
            Generator::Mallows { k, n, phi } => {
                if n == 0 {
                    return Err(Error::argument("n must be >= 1"));
                }
                let reference = Preference::identity(k)?;
                if phi == 0.0 {
                    Ok(Prepared::Unanimous(Profile::unanimous(reference, n)?))
                } else {
                    Ok(Prepared::Mallows(MallowsParams::new(reference, phi)?, n))
                }
            }
            Generator::Impartial { k, m } => {
                let params = ImpartialParams::new(k, m)?;
                Ok(Prepared::Impartial(params, enumerate_preferences(k)?))
            }
        }
    }
}

enum Prepared {
    Unanimous(Profile),
    Mallows(MallowsParams, u64),
    Impartial(ImpartialParams, Vec<Preference>),
}

impl Prepared {
    fn draw(&self, rng: &mut TrialRng) -> Result<Profile> {
        match self {
            Prepared::Unanimous(p) => Ok(p.clone()),
            Prepared::Mallows(params, n) => mallows_profile_with_rng(params, *n, rng),
            Prepared::Impartial(params, all) => impartial_profile_with_rng(params, all, rng),
        }
    }
}

/// Which checks run on every trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Detectors {
    pub level1: bool,
    pub flexible: bool,
    pub single_peaked: bool,
    /// Run the stability verifier on every trial with Flexible Consensus.
    pub verify: bool,
}

impl Default for Detectors {
    fn default() -> Self {
        Self {
            level1: true,
            flexible: true,
            single_peaked: true,
            verify: true,
        }
    }
}

/// An observed fraction with a 95% Wilson score interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fraction {
    pub value: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl Fraction {
    pub fn new(successes: u64, trials: u64) -> Self {
        if trials == 0 {
            return Self {
                value: 0.0,
                ci_low: 0.0,
                ci_high: 1.0,
            };
        }
        let z = 1.959_963_984_540_054;
        let n = trials as f64;
        let p = successes as f64 / n;
        let denom = 1.0 + z * z / n;
        let centre = (p + z * z / (2.0 * n)) / denom;
        let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
        Self {
            value: p,
            // the interval touches 0 or 1 exactly at the extremes
            ci_low: if successes == 0 {
                0.0
            } else {
                (centre - half).max(0.0)
            },
            ci_high: if successes == trials {
                1.0
            } else {
                (centre + half).min(1.0)
            },
        }
    }
}

/// Binomial standard error `sqrt(p (1 - p) / trials)`.
pub fn binomial_sigma(p: f64, trials: u64) -> f64 {
    (p * (1.0 - p) / trials as f64).sqrt()
}

/// Aggregate of one grid point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialStats {
    pub generator: Generator,
    pub trials: u64,
    pub level1_found: u64,
    pub flexible_found: u64,
    pub single_peaked: u64,
    /// Trials with Flexible Consensus that went through the stability verifier.
    pub stability_checked: u64,
    /// Total violations reported by the stability verifier.
    pub stability_violations: u64,
    pub level1_fraction: Fraction,
    pub flexible_fraction: Fraction,
    pub single_peaked_fraction: Fraction,
    pub seed: u64,
    /// First violation message, if any, for debugging.
    pub first_violation: Option<String>,
}

#[derive(Default)]
struct Tally {
    level1: u64,
    flexible: u64,
    single_peaked: u64,
    checked: u64,
    violations: u64,
    first_violation: Option<(u64, String)>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.level1 += other.level1;
        self.flexible += other.flexible;
        self.single_peaked += other.single_peaked;
        self.checked += other.checked;
        self.violations += other.violations;
        // keep the lowest trial index so the result is order independent
        self.first_violation = match (self.first_violation, other.first_violation) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

fn run_trial(
    prepared: &Prepared,
    detectors: Detectors,
    mut rng: TrialRng,
    index: u64,
) -> Result<Tally> {
    let profile = prepared.draw(&mut rng)?;
    let mut t = Tally::default();
    if detectors.level1 && detect_level1(&profile).is_found() {
        t.level1 = 1;
    }
    if detectors.flexible {
        let report = detect_flexible(&profile);
        if report.is_found() {
            t.flexible = 1;
            if detectors.verify {
                t.checked = 1;
                for pivot in &report.pivots {
                    let check = verify_stability(&profile, pivot)?;
                    t.violations += check.violations.len() as u64;
                    if t.first_violation.is_none() {
                        if let Some(v) = check.violations.first() {
                            t.first_violation = Some((index, format!("trial {index}: {v:?}")));
                        }
                    }
                }
            }
        }
    }
    if detectors.single_peaked && is_single_peaked(&profile) {
        t.single_peaked = 1;
    }
    Ok(t)
}

/// Runs `trials` independent trials of `generator`.
///
/// Trial `i` draws from [`trial_rng`]`(master_seed, point, i)`, where `point`
/// is derived from the generator parameters; identical inputs give
/// identical statistics regardless of thread scheduling.
pub fn run_sweep(
    generator: Generator,
    detectors: Detectors,
    trials: u64,
    master_seed: u64,
) -> Result<TrialStats> {
    if trials == 0 {
        return Err(Error::argument("trials must be >= 1"));
    }
    let prepared = generator.prepare()?;
    let point = generator.point_id();
    let tally = (0..trials)
        .into_par_iter()
        .map(|i| run_trial(&prepared, detectors, trial_rng(master_seed, point, i), i))
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;

    Ok(TrialStats {
        generator,
        trials,
        level1_found: tally.level1,
        flexible_found: tally.flexible,
        single_peaked: tally.single_peaked,
        stability_checked: tally.checked,
        stability_violations: tally.violations,
        level1_fraction: Fraction::new(tally.level1, trials),
        flexible_fraction: Fraction::new(tally.flexible, trials),
        single_peaked_fraction: Fraction::new(tally.single_peaked, trials),
        seed: master_seed,
        first_violation: tally.first_violation.map(|(_, s)| s),
    })
}

/// [`run_sweep`] over every point of a grid, in the given order.
pub fn run_grid(
    generators: &[Generator],
    detectors: Detectors,
    trials: u64,
    master_seed: u64,
) -> Result<Vec<TrialStats>> {
    generators
        .iter()
        .map(|&g| run_sweep(g, detectors, trials, master_seed))
        .collect()
}
