//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Run with `cargo test -p flexcon-cli --test acceptance`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::Instant;

use flexcon::experiments::{
    binomial_sigma, flexible_lower_bound, level1_upper_bound, p_equal_approx, p_equal_exact,
    p_equal_laplace, p_equal_monte_carlo, run_sweep, trial_rng, Detectors, Generator,
    MallowsParams, TrialStats,
};
use flexcon::io::parse_preflib;
use flexcon::prefcore::factorial;
use flexcon::{
    apply_switch, brute_force_detect, detect_flexible, detect_level1, enumerate_preferences,
    inversion_distance, mahonian_table, ConsensusKind, Preference, Profile,
};
use rand::Rng;
use serde_json::Value;

/// Master seed for every randomized criterion.
const SEED: u64 = 42;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

/// Random profile mixing uniform ballots and Mallows ballots around a random
/// reference, so both found and not-found outcomes occur often.
fn random_profile<R: Rng>(max_n: u64, all: &[Preference], rng: &mut R) -> Profile {
    let n = rng.random_range(1..=max_n);
    if rng.random_bool(0.4) {
        let ballots = (0..n).map(|_| all[rng.random_range(0..all.len())].clone());
        return Profile::from_ballots(ballots).unwrap();
    }
    let reference = all[rng.random_range(0..all.len())].clone();
    let phi = rng.random_range(0.01..=1.0);
    let params = MallowsParams::new(reference, phi).unwrap();
    Profile::from_ballots((0..n).map(|_| params.sample(rng))).unwrap()
}

fn criterion_1() -> Verdict {
    let mut found = [0usize; 2];
    let mut checked = 0;
    for (k, count, max_n) in [(3, 1000, 50), (4, 500, 60)] {
        let all = enumerate_preferences(k).unwrap();
        let mut rng = trial_rng(SEED, 1, k as u64);
        for i in 0..count {
            let profile = random_profile(max_n, &all, &mut rng);
            for (slot, (fast, kind)) in [
                (detect_level1(&profile), ConsensusKind::Level1),
                (detect_flexible(&profile), ConsensusKind::Flexible),
            ]
            .into_iter()
            .enumerate()
            {
                let oracle = brute_force_detect(&profile, kind).unwrap();
                if fast.outcome != oracle.outcome || fast.pivots != oracle.pivots {
                    return verdict(
                        false,
                        format!(
                            "K={k} profile #{i} {kind:?}: fast {:?} vs oracle {:?}",
                            fast.pivots, oracle.pivots
                        ),
                    );
                }
                found[slot] += usize::from(fast.is_found());
            }
            checked += 1;
        }
    }
    verdict(
        true,
        format!(
            "{checked} profiles agree with the oracle (level-1 found {}, flexible found {})",
            found[0], found[1]
        ),
    )
}

fn criterion_2() -> Verdict {
    for k in 3..=7 {
        let table = mahonian_table(k).unwrap();
        let identity = Preference::identity(k).unwrap();
        let mut counts = vec![0u64; table.max_inversions() + 1];
        for p in enumerate_preferences(k).unwrap() {
            counts[inversion_distance(&p, &identity).unwrap()] += 1;
        }
        if table.counts_u64().unwrap() != counts {
            return verdict(false, format!("K={k}: table differs from enumeration"));
        }
    }
    for k in 3..=12 {
        let total = mahonian_table(k).unwrap().total().clone();
        if total != factorial(k).unwrap().into() {
            return verdict(false, format!("K={k}: counts sum to {total}"));
        }
    }
    verdict(
        true,
        "enumeration match for K=3..7, sums equal K! for K=3..12",
    )
}

struct Sweeps {
    impartial: Vec<TrialStats>,
    mallows: Vec<TrialStats>,
}

const IMPARTIAL_TRIALS: u64 = 2000;
const MALLOWS_TRIALS: u64 = 1000;
const MALLOWS_PHIS: [f64; 4] = [0.01, 0.05, 0.2, 1.0];

fn sweeps() -> Sweeps {
    let impartial = [100, 1000, 10_000]
        .iter()
        .map(|&m| {
            run_sweep(
                Generator::Impartial { k: 3, m },
                Detectors::default(),
                IMPARTIAL_TRIALS,
                SEED,
            )
            .unwrap()
        })
        .collect();
    let mallows = MALLOWS_PHIS
        .iter()
        .map(|&phi| {
            run_sweep(
                Generator::Mallows { k: 3, n: 100, phi },
                Detectors::default(),
                MALLOWS_TRIALS,
                SEED,
            )
            .unwrap()
        })
        .collect();
    Sweeps { impartial, mallows }
}

fn criterion_3(s: &Sweeps) -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for st in &s.impartial[..2] {
        let f = st.flexible_fraction.value;
        let ok = (0.030..=0.060).contains(&f);
        pass &= ok;
        parts.push(format!(
            "flexible(m={})={f:.4}{}",
            st.generator.size(),
            if ok { "" } else { " out of [0.030, 0.060]" }
        ));
    }
    let l1 = s.impartial[1].level1_fraction.value;
    let ok = l1 <= 0.01;
    pass &= ok;
    parts.push(format!(
        "level1(m=1000)={l1:.4}{}",
        if ok { "" } else { " > 0.01" }
    ));
    verdict(pass, parts.join(", "))
}

fn criterion_4(s: &Sweeps) -> Verdict {
    let t = IMPARTIAL_TRIALS;
    let bound = level1_upper_bound(10_000, 3).unwrap().clamped;
    let observed = s.impartial[2].level1_fraction.value;
    let limit = bound + 3.0 * binomial_sigma(bound, t);
    let mut pass = observed < limit;
    let mut detail = format!("level1(m=10000)={observed:.5} vs bound+3σ={limit:.5}");
    let fr: Vec<f64> = s
        .impartial
        .iter()
        .map(|st| st.level1_fraction.value)
        .collect();
    for w in fr.windows(2) {
        let pooled = (w[0] + w[1]) / 2.0;
        let sigma = (pooled * (1.0 - pooled) * 2.0 / t as f64).sqrt();
        if w[1] > w[0] + 2.0 * sigma {
            pass = false;
            detail.push_str(&format!(
                "; increase {:.5} -> {:.5} exceeds 2σ={:.5}",
                w[0],
                w[1],
                2.0 * sigma
            ));
        }
    }
    detail.push_str(&format!("; level1 over m=100,1000,10000: {fr:.5?}"));
    verdict(pass, detail)
}

fn criterion_5(s: &Sweeps) -> Verdict {
    let l1: Vec<f64> = s
        .mallows
        .iter()
        .map(|st| st.level1_fraction.value)
        .collect();
    let fl: Vec<f64> = s
        .mallows
        .iter()
        .map(|st| st.flexible_fraction.value)
        .collect();
    let sp: Vec<f64> = s
        .mallows
        .iter()
        .map(|st| st.single_peaked_fraction.value)
        .collect();
    let mut failures = Vec::new();
    if l1[0] <= 0.0 {
        failures.push("level1 is zero at phi=0.01".to_string());
    }
    for (phi, f) in MALLOWS_PHIS.iter().zip(&l1).skip(1) {
        if *f > 0.01 {
            failures.push(format!("level1={f:.4} > 0.01 at phi={phi}"));
        }
    }
    for ((phi, f), l) in MALLOWS_PHIS.iter().zip(&fl).zip(&l1) {
        if f <= l {
            failures.push(format!("flexible {f:.4} <= level1 {l:.4} at phi={phi}"));
        }
    }
    if sp.windows(2).any(|w| w[1] > w[0]) || sp[0] <= sp[sp.len() - 1] {
        failures.push("single-peaked fraction not decreasing".to_string());
    }
    let table = format!(
        "level1={l1:.3?} flexible={fl:.3?} single_peaked={sp:.3?} for phi={MALLOWS_PHIS:?}"
    );
    if failures.is_empty() {
        verdict(true, table)
    } else {
        verdict(false, format!("{}; {table}", failures.join("; ")))
    }
}

fn criterion_6(s: &Sweeps) -> Verdict {
    let all = s.impartial.iter().chain(&s.mallows);
    let (checked, violations) = all.clone().fold((0, 0), |(c, v), st| {
        (c + st.stability_checked, v + st.stability_violations)
    });
    let first = all.filter_map(|st| st.first_violation.clone()).next();
    verdict(
        violations == 0 && checked > 0,
        match first {
            None => format!("{checked} flexible-consensus profiles verified, 0 violations"),
            Some(f) => format!("{violations} violations over {checked} profiles; first: {f}"),
        },
    )
}

fn criterion_7() -> Verdict {
    let mut triples = 0u64;
    for k in [3, 4] {
        let all = enumerate_preferences(k).unwrap();
        for reference in &all {
            for a in 0..k {
                for b in 0..k {
                    if a == b || !reference.prefers(a, b) {
                        continue;
                    }
                    for p in all.iter().filter(|p| p.prefers(b, a)) {
                        let switched = apply_switch(p, a, b).unwrap();
                        let before = inversion_distance(p, reference).unwrap();
                        let after = inversion_distance(&switched, reference).unwrap();
                        if after >= before {
                            return verdict(
                                false,
                                format!(
                                    "K={k} ref={reference} a={a} b={b} p={p}: {before} -> {after}"
                                ),
                            );
                        }
                        triples += 1;
                    }
                }
            }
        }
    }
    verdict(
        true,
        format!("{triples} triples, every switch strictly decreases distance"),
    )
}

fn criterion_8() -> Verdict {
    let (m, p) = (2000, 1.0 / 6.0);
    let samples = 1_000_000;
    let mut pass = true;
    let mut parts = Vec::new();
    for t in [2, 3] {
        let approx = p_equal_approx(m, p, t).unwrap();
        let mc = p_equal_monte_carlo(m, p, t, samples, SEED).unwrap();
        let rel = (approx - mc).abs() / mc;
        pass &= rel <= 0.15;
        parts.push(format!(
            "t={t}: approx={approx:.6e} mc={mc:.6e} rel={:.1}% (exact={:.6e}, laplace={:.6e})",
            rel * 100.0,
            p_equal_exact(m, p, t).unwrap(),
            p_equal_laplace(m, p, t).unwrap()
        ));
    }
    let unit = [(1, 0.1), (2000, p), (1_000_000, 0.3)]
        .iter()
        .all(|&(m, p)| p_equal_approx(m, p, 1).unwrap() == 1.0);
    pass &= unit;
    parts.push(format!("t=1 exactly 1: {unit}"));
    verdict(pass, parts.join("; "))
}

fn criterion_9() -> Verdict {
    let flex = flexible_lower_bound(3).unwrap();
    let exact_ok = flex.exact.numer().to_string() == "1" && flex.exact.denom().to_string() == "30";
    let mut closed_ok = true;
    for m in [10, 1000, 123_456, 10_000_000] {
        let b3 = level1_upper_bound(m, 3).unwrap();
        let b4 = level1_upper_bound(m, 4).unwrap();
        let x = 2.0 * std::f64::consts::PI * m as f64;
        let e3 = 6.0 / (x / 6.0);
        let e4 = 24.0 / (x / 24.0).powf(8.5);
        closed_ok &= b3.exponent == 2u32.into() && b4.exponent == 17u32.into();
        closed_ok &= (b3.raw / e3 - 1.0).abs() < 1e-12 && (b4.raw / e4 - 1.0).abs() < 1e-9;
    }
    verdict(
        exact_ok && closed_ok,
        format!(
            "flexible_lower_bound(3)={}/{}, level-1 exponents 2 and 17, closed forms {}",
            flex.exact.numer(),
            flex.exact.denom(),
            if closed_ok { "match" } else { "differ" }
        ),
    )
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

/// `(file, status, level1, flexible, single_peaked)`
type ScanRow<'a> = (&'a str, &'a str, Option<bool>, Option<bool>, Option<bool>);

const EXPECTED_SCAN: &[ScanRow] = &[
    ("bad_count.soc", "error", None, None, None),
    ("cycle.soc", "ok", Some(false), Some(false), Some(false)),
    (
        "flexible_only.soc",
        "ok",
        Some(false),
        Some(true),
        Some(true),
    ),
    ("graded.soc", "ok", Some(true), Some(true), Some(false)),
    ("named_k4.soc", "ok", Some(true), Some(true), Some(true)),
    ("tied.toc", "error", None, None, None),
    ("two_pivots.soc", "ok", Some(false), Some(true), Some(true)),
    ("unanimous.soc", "ok", Some(true), Some(true), Some(true)),
    ("uniform.soc", "ok", Some(false), Some(true), Some(false)),
];

fn criterion_10() -> Verdict {
    let out = Command::new(env!("CARGO_BIN_EXE_flexcon"))
        .args(["preflib", "scan", "--json"])
        .arg(fixtures())
        .output()
        .expect("run flexcon");
    if !out.status.success() {
        return verdict(false, format!("scan exited with {}", out.status));
    }
    let body: Value = serde_json::from_slice(&out.stdout).expect("scan JSON");
    let rows = body["files"].as_array().expect("files array");
    let got: Vec<_> = rows
        .iter()
        .map(|r| {
            (
                r["path"].as_str().unwrap_or_default().to_string(),
                r["status"].as_str().unwrap_or_default().to_string(),
                r["level1"].as_bool(),
                r["flexible"].as_bool(),
                r["single_peaked"].as_bool(),
            )
        })
        .collect();
    let want: Vec<_> = EXPECTED_SCAN
        .iter()
        .map(|&(p, s, a, b, c)| (p.to_string(), s.to_string(), a, b, c))
        .collect();
    if got != want {
        return verdict(false, format!("classification mismatch: {got:?}"));
    }

    let mut round_tripped = 0;
    for (name, status, ..) in EXPECTED_SCAN.iter().filter(|e| e.1 == "ok") {
        let text = fs::read_to_string(fixtures().join(name)).unwrap();
        match parse_preflib(&text) {
            Ok(doc) if doc.to_soc_string() == text => round_tripped += 1,
            _ => {
                return verdict(
                    false,
                    format!("{name} ({status}) does not round-trip byte for byte"),
                )
            }
        }
    }
    verdict(
        true,
        format!(
            "{} files classified as expected, {round_tripped} parsed files round-trip exactly",
            got.len()
        ),
    )
}

fn main() -> ExitCode {
    let mut all_pass = true;
    let mut report = |n: usize, name: &str, run: &mut dyn FnMut() -> Verdict| {
        let start = Instant::now();
        let v = run();
        all_pass &= v.pass;
        println!(
            "{} criterion {n:>2} [{name}] {} ({:.1}s)",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail,
            start.elapsed().as_secs_f64()
        );
    };
    report(1, "oracle equivalence", &mut criterion_1);
    report(2, "mahonian counts", &mut criterion_2);
    let start = Instant::now();
    let sweeps = sweeps();
    println!(
        "     sweeps for criteria 3-6 ({:.1}s, seed {SEED})",
        start.elapsed().as_secs_f64()
    );
    report(3, "impartial culture fractions", &mut || {
        criterion_3(&sweeps)
    });
    report(4, "level-1 decay", &mut || criterion_4(&sweeps));
    report(5, "mallows shape", &mut || criterion_5(&sweeps));
    report(6, "stability properties", &mut || criterion_6(&sweeps));
    report(7, "switch decreases distance", &mut criterion_7);
    report(8, "equal-binomials approximation", &mut criterion_8);
    report(9, "bounds exactness", &mut criterion_9);
    report(10, "preflib fixtures", &mut criterion_10);
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
