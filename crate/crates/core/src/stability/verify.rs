use serde::Serialize;

use crate::detect::{check_flexible_condition1, detect_flexible};
use crate::error::{Error, Result};
use crate::prefcore::{apply_switch, Preference, Profile};
use crate::stability::majority::majority_relation;
use crate::stability::scoring::{scoring_totals, ScoringRule};

/// A single failed stability assertion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// The pivot ranks `a` above `b` but `a` does not beat `b`.
    MajorityDisagrees { a: usize, b: usize },
    /// The pivot's top alternative is not a weak Condorcet winner.
    BestNotCondorcetWinner { best: usize },
    /// Odd `n`: `a` beats `b` although the pivot ranks `b` above `a`.
    OddMajorityReversed { a: usize, b: usize },
    /// Odd `n`: other preferences satisfy Flexible Condition 1 as well.
    OddPivotNotUnique { others: Vec<Preference> },
    /// Even `n`: `a` beats `b` against the pivot's order, yet the pivot with
    /// `a` and `b` switched does not satisfy Flexible Condition 1.
    EvenPairUnwitnessed {
        a: usize,
        b: usize,
        switched: Preference,
    },
    /// The pivot ranks `a` above `b` but `b` scores strictly more.
    ScoreInversion {
        rule: String,
        a: usize,
        b: usize,
        score_a: i64,
        score_b: i64,
    },
    /// Some alternative strictly out-scores the pivot's top alternative.
    BestOutscored {
        rule: String,
        best: usize,
        other: usize,
    },
}

/// Outcome of [`verify_stability`]. A clean report has no violations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub pivot: Preference,
    pub n: u64,
    /// Every preference satisfying Flexible Condition 1 in this profile.
    pub flexible_pivots: Vec<Preference>,
    pub rules_checked: Vec<String>,
    pub violations: Vec<Violation>,
}

impl StabilityReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the guarantees Flexible Consensus around `pivot` gives:
///
/// * `a ≻₀ b` implies `a` beats `b` by a weak majority, so `Best(≻₀)` is a
///   weak Condorcet winner;
/// * with odd `n` the strict majority order equals `≻₀` and no other
///   preference satisfies Flexible Condition 1;
/// * with even `n`, a majority pair against `≻₀` is explained by the
///   switched pivot, which must itself satisfy Flexible Condition 1;
/// * for every rule in [`ScoringRule::battery`], `a ≻₀ b` implies
///   `score(a) ≥ score(b)`, hence `Best(≻₀)` has the top score.
///
/// Fails with [`Error::Precondition`] when `pivot` does not satisfy
/// Flexible Condition 1.
pub fn verify_stability(profile: &Profile, pivot: &Preference) -> Result<StabilityReport> {
    verify_stability_with(profile, pivot, &ScoringRule::battery(profile.k()))
}

/// [`verify_stability`] with a caller-supplied set of scoring rules.
pub fn verify_stability_with(
    profile: &Profile,
    pivot: &Preference,
    rules: &[ScoringRule],
) -> Result<StabilityReport> {
    if !check_flexible_condition1(profile, pivot)? {
        return Err(Error::Precondition(format!(
            "{pivot} does not satisfy Flexible Condition 1"
        )));
    }
    let k = profile.k();
    let n = profile.n();
    let majority = majority_relation(profile);
    let flexible_pivots = detect_flexible(profile).pivots;
    let mut violations = Vec::new();

    // ordered pairs (a, b) with a ranked above b by the pivot
    let order = pivot.to_vec();
    let pivot_pairs: Vec<(usize, usize)> = order
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| order[i + 1..].iter().map(move |&b| (a, b)))
        .collect();

    for &(a, b) in &pivot_pairs {
        if !majority.beats(a, b) {
            violations.push(Violation::MajorityDisagrees { a, b });
        }
    }
    let best = pivot.best();
    if (0..k).any(|b| b != best && !majority.beats(best, b)) {
        violations.push(Violation::BestNotCondorcetWinner { best });
    }

    if n % 2 == 1 {
        for &(a, b) in &pivot_pairs {
            if majority.beats(b, a) {
                violations.push(Violation::OddMajorityReversed { a: b, b: a });
            }
        }
        let others: Vec<Preference> = flexible_pivots
            .iter()
            .filter(|p| *p != pivot)
            .cloned()
            .collect();
        if !others.is_empty() {
            violations.push(Violation::OddPivotNotUnique { others });
        }
    } else {
        // (hi, lo) are in pivot order; a majority for lo over hi needs a witness
        for &(hi, lo) in &pivot_pairs {
            if majority.beats(lo, hi) {
                let switched = apply_switch(pivot, lo, hi)?;
                if !flexible_pivots.contains(&switched) {
                    violations.push(Violation::EvenPairUnwitnessed {
                        a: lo,
                        b: hi,
                        switched,
                    });
                }
            }
        }
    }

    for rule in rules {
        let totals = scoring_totals(profile, rule)?;
        for &(a, b) in &pivot_pairs {
            if totals[a] < totals[b] {
                violations.push(Violation::ScoreInversion {
                    rule: rule.name().to_string(),
                    a,
                    b,
                    score_a: totals[a],
                    score_b: totals[b],
                });
            }
        }
        if let Some(other) = (0..k).find(|&b| totals[b] > totals[best]) {
            violations.push(Violation::BestOutscored {
                rule: rule.name().to_string(),
                best,
                other,
            });
        }
    }

    Ok(StabilityReport {
        pivot: pivot.clone(),
        n,
        flexible_pivots,
        rules_checked: rules.iter().map(|r| r.name().to_string()).collect(),
        violations,
    })
}
