//! `flexcon` command-line front end.

mod scan;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use flexcon::experiments::{
    flexible_lower_bound, flexible_lower_bound_log10, level1_upper_bound, run_grid, Detectors,
    Generator, TrialStats, EXACT_BOUND_CAP,
};
use flexcon::io::{parse_preflib, SweepRow};
use flexcon::{detect_flexible, detect_level1, is_single_peaked, ConsensusReport, Error};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "flexcon",
    version,
    about = "Consensus detection in preference profiles"
)]
struct Cli {
    /// Emit machine-readable JSON; errors go to stderr as JSON too.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Detect level-1 and Flexible Consensus in a PrefLib SOC file.
    Detect {
        #[arg(long, short)]
        input: PathBuf,
    },
    /// Monte-Carlo sweep over a parameter grid.
    Simulate(SimulateArgs),
    /// Analytic bounds for the impartial-culture process.
    Bounds {
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<u64>,
    },
    /// PrefLib directory utilities.
    Preflib {
        #[command(subcommand)]
        command: PreflibCommand,
    },
}

#[derive(Subcommand)]
enum PreflibCommand {
    /// Parse every file under a directory and classify each profile.
    Scan { dir: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Mallows,
    Impartial,
}

#[derive(clap::Args)]
struct SimulateArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[arg(long, value_delimiter = ',', required = true)]
    k: Vec<usize>,
    /// Voters per profile (mallows).
    #[arg(long, value_delimiter = ',')]
    n: Vec<u64>,
    /// Dispersion in [0, 1] (mallows); 0 is the unanimous limit.
    #[arg(long, value_delimiter = ',')]
    phi: Vec<f64>,
    /// Expected electorate (impartial).
    #[arg(long, value_delimiter = ',')]
    m: Vec<u64>,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, env = "FLEXCON_SEED", default_value_t = 0)]
    seed: u64,
    /// Write the CSV table here instead of stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
}

/// Failure of a subcommand, mapped onto the exit-code contract.
#[derive(Debug)]
enum CliError {
    Lib(Error),
    Io { path: PathBuf, source: io::Error },
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(Error::Parse { .. } | Error::UnsupportedFormat { .. }) => 2,
            CliError::Lib(Error::Capacity { .. }) => 4,
            CliError::Lib(_) | CliError::Usage(_) => 3,
            CliError::Io { .. } => 1,
        }
    }

    fn class(&self) -> &'static str {
        match self {
            CliError::Lib(e) => e.class(),
            CliError::Io { .. } => "io",
            CliError::Usage(_) => "argument",
        }
    }

    fn line(&self) -> Option<usize> {
        match self {
            CliError::Lib(Error::Parse { line, .. } | Error::UnsupportedFormat { line, .. }) => {
                Some(*line)
            }
            _ => None,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => e.fmt(f),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn main() -> ExitCode {
    let json_flag = std::env::args().any(|a| a == "--json");
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            report_error(&CliError::Usage(e.to_string()), json_flag);
            return ExitCode::from(3);
        }
    };
    let json = cli.json;
    let mut out = io::stdout().lock();
    let result = match cli.command {
        Command::Detect { input } => cmd_detect(&input, json, &mut out),
        Command::Simulate(args) => cmd_simulate(&args, json, &mut out),
        Command::Bounds { k, m } => cmd_bounds(&k, &m, json, &mut out),
        Command::Preflib {
            command: PreflibCommand::Scan { dir },
        } => scan::cmd_scan(&dir, json, &mut out),
    };
    match result.and_then(|()| out.flush().map_err(stdout_error)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            report_error(&e, json);
            ExitCode::from(e.exit_code())
        }
    }
}

fn report_error(e: &CliError, json: bool) {
    if json {
        let body =
            json!({ "error": { "class": e.class(), "message": e.to_string(), "line": e.line() } });
        eprintln!("{body}");
    } else {
        eprintln!("error: {}", e.to_string().trim_end());
    }
}

fn stdout_error(source: io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_report(
    out: &mut impl Write,
    label: &str,
    report: &ConsensusReport,
    names: &[String],
) -> io::Result<()> {
    if report.is_found() {
        writeln!(out, "{label}: found")?;
        for p in &report.pivots {
            writeln!(out, "  pivot {}  {}", p, p.display_with(names))?;
        }
    } else {
        writeln!(out, "{label}: not found ({})", report.failure_reason)?;
    }
    Ok(())
}

fn cmd_detect(input: &Path, json: bool, out: &mut impl Write) -> CliResult {
    let doc = parse_preflib(&read_file(input)?)?;
    let profile = doc.to_profile()?;
    let level1 = detect_level1(&profile);
    let flexible = detect_flexible(&profile);
    let single_peaked = is_single_peaked(&profile);
    let names = doc.display_names();
    if json {
        let body = json!({
            "file": input.display().to_string(),
            "k": profile.k(),
            "n": profile.n(),
            "distinct": profile.n_distinct(),
            "alternatives": names,
            "level1": level1,
            "flexible": flexible,
            "single_peaked": single_peaked,
        });
        writeln!(out, "{body:#}").map_err(stdout_error)?;
    } else {
        (|| -> io::Result<()> {
            writeln!(
                out,
                "{}: K={} n={} distinct={}",
                input.display(),
                profile.k(),
                profile.n(),
                profile.n_distinct()
            )?;
            write_report(out, "level-1 consensus", &level1, &names)?;
            write_report(out, "flexible consensus", &flexible, &names)?;
            writeln!(
                out,
                "single-peaked: {}",
                if single_peaked { "yes" } else { "no" }
            )
        })()
        .map_err(stdout_error)?;
    }
    Ok(())
}

fn grid(args: &SimulateArgs) -> CliResult<Vec<Generator>> {
    let mut points = Vec::new();
    match args.model {
        Model::Mallows => {
            if args.n.is_empty() || args.phi.is_empty() {
                return Err(CliError::Usage("mallows needs --n and --phi".into()));
            }
            if !args.m.is_empty() {
                return Err(CliError::Usage(
                    "--m applies to the impartial model only".into(),
                ));
            }
            for &k in &args.k {
                for &n in &args.n {
                    for &phi in &args.phi {
                        if !(0.0..=1.0).contains(&phi) {
                            return Err(CliError::Usage(format!(
                                "phi must lie in [0, 1], got {phi}"
                            )));
                        }
                        points.push(Generator::Mallows { k, n, phi });
                    }
                }
            }
        }
        Model::Impartial => {
            if args.m.is_empty() {
                return Err(CliError::Usage("impartial needs --m".into()));
            }
            if !args.n.is_empty() || !args.phi.is_empty() {
                return Err(CliError::Usage(
                    "--n and --phi apply to the mallows model only".into(),
                ));
            }
            for &k in &args.k {
                for &m in &args.m {
                    points.push(Generator::Impartial { k, m });
                }
            }
        }
    }
    Ok(points)
}

fn write_csv<W: Write>(stats: &[TrialStats], sink: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(sink);
    for s in stats {
        w.serialize(SweepRow::from(s))?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_simulate(args: &SimulateArgs, json: bool, out: &mut impl Write) -> CliResult {
    let points = grid(args)?;
    let stats = run_grid(&points, Detectors::default(), args.trials, args.seed)?;
    let violations: u64 = stats.iter().map(|s| s.stability_violations).sum();
    if violations > 0 {
        eprintln!("warning: stability verifier reported {violations} violations");
    }
    let csv_err = |e: csv::Error, path: &Path| CliError::Io {
        path: path.to_path_buf(),
        source: io::Error::other(e),
    };
    if let Some(path) = &args.csv {
        let file = fs::File::create(path).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        write_csv(&stats, file).map_err(|e| csv_err(e, path))?;
    }
    if json {
        writeln!(
            out,
            "{:#}",
            serde_json::to_value(&stats).expect("stats serialize")
        )
        .map_err(stdout_error)?;
    } else if args.csv.is_none() {
        write_csv(&stats, &mut *out).map_err(|e| csv_err(e, Path::new("<stdout>")))?;
    } else {
        for s in &stats {
            writeln!(
                out,
                "{} K={} size={} phi={} trials={}: level1={:.4} flexible={:.4} single_peaked={:.4}",
                s.generator.model_name(),
                s.generator.k(),
                s.generator.size(),
                s.generator.phi(),
                s.trials,
                s.level1_fraction.value,
                s.flexible_fraction.value,
                s.single_peaked_fraction.value
            )
            .map_err(stdout_error)?;
        }
    }
    Ok(())
}

fn cmd_bounds(ks: &[usize], ms: &[u64], json: bool, out: &mut impl Write) -> CliResult {
    let mut rows = Vec::new();
    for &k in ks {
        let log10 = flexible_lower_bound_log10(k)?;
        let exact = if k <= EXACT_BOUND_CAP {
            let b = flexible_lower_bound(k)?;
            Some(format!("{}/{}", b.exact.numer(), b.exact.denom()))
        } else {
            None
        };
        for &m in ms {
            let l1 = level1_upper_bound(m, k)?;
            rows.push(json!({
                "k": k,
                "m": m,
                "level1_upper_bound": l1,
                "flexible_lower_bound": { "exact": exact, "log10": log10, "value": 10f64.powf(log10) },
            }));
            if !json {
                writeln!(
                    out,
                    "K={k} m={m}: level-1 upper bound {:.6e} (exponent {}, clamped {:.6e}); \
                     flexible lower bound {} (log10 {:.4})",
                    l1.raw,
                    l1.exponent,
                    l1.clamped,
                    exact.as_deref().unwrap_or("n/a"),
                    log10
                )
                .map_err(stdout_error)?;
            }
        }
    }
    if json {
        writeln!(out, "{:#}", serde_json::Value::Array(rows)).map_err(stdout_error)?;
    }
    Ok(())
}
