use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use flexcon::io::parse_preflib;
use flexcon::{detect_flexible, detect_level1, is_single_peaked, Error};
use serde::Serialize;

use crate::{stdout_error, CliError, CliResult};

#[derive(Serialize)]
struct FileSummary {
    path: String,
    status: &'static str,
    k: Option<usize>,
    n: Option<u64>,
    level1: Option<bool>,
    flexible: Option<bool>,
    single_peaked: Option<bool>,
    error_class: Option<&'static str>,
    error: Option<String>,
}

#[derive(Serialize, Default)]
struct Totals {
    files: usize,
    parsed: usize,
    failed: usize,
    level1: usize,
    flexible: usize,
    single_peaked: usize,
}

fn collect_files(dir: &Path, acc: &mut Vec<PathBuf>) -> io::Result<()> {
    for entry in fs::read_dir(dir)? {
        let entry = entry?;
        if entry.file_name().to_string_lossy().starts_with('.') {
            continue;
        }
        let path = entry.path();
        if entry.file_type()?.is_dir() {
            collect_files(&path, acc)?;
        } else {
            acc.push(path);
        }
    }
    Ok(())
}

fn summarize(path: &Path, shown: String) -> FileSummary {
    let failed = |class: &'static str, message: String| FileSummary {
        path: shown.clone(),
        status: "error",
        k: None,
        n: None,
        level1: None,
        flexible: None,
        single_peaked: None,
        error_class: Some(class),
        error: Some(message),
    };
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return failed("io", e.to_string()),
    };
    let profile = match parse_preflib(&text).and_then(|d| d.to_profile()) {
        Ok(p) => p,
        Err(e) => return failed(Error::class(&e), e.to_string()),
    };
    FileSummary {
        path: shown,
        status: "ok",
        k: Some(profile.k()),
        n: Some(profile.n()),
        level1: Some(detect_level1(&profile).is_found()),
        flexible: Some(detect_flexible(&profile).is_found()),
        single_peaked: Some(is_single_peaked(&profile)),
        error_class: None,
        error: None,
    }
}

fn yes_no(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    }
}

pub(crate) fn cmd_scan(dir: &Path, json: bool, out: &mut impl Write) -> CliResult {
    let mut files = Vec::new();
    collect_files(dir, &mut files).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    files.sort();

    let rows: Vec<FileSummary> = files
        .iter()
        .map(|p| {
            let shown = p.strip_prefix(dir).unwrap_or(p).display().to_string();
            summarize(p, shown)
        })
        .collect();

    let mut totals = Totals {
        files: rows.len(),
        ..Totals::default()
    };
    for r in &rows {
        if r.status == "ok" {
            totals.parsed += 1;
        } else {
            totals.failed += 1;
        }
        totals.level1 += usize::from(r.level1 == Some(true));
        totals.flexible += usize::from(r.flexible == Some(true));
        totals.single_peaked += usize::from(r.single_peaked == Some(true));
    }

    if json {
        let body = serde_json::json!({ "files": rows, "totals": totals });
        writeln!(out, "{body:#}").map_err(stdout_error)?;
        return Ok(());
    }
    (|| -> io::Result<()> {
        let width = rows.iter().map(|r| r.path.len()).max().unwrap_or(4).max(4);
        let header = format!(
            "{:<width$}  {:<6} {:>4} {:>8}  {:<7} {:<8} {}",
            "file", "status", "K", "n", "level1", "flexible", "single_peaked"
        );
        writeln!(out, "{header}")?;
        for r in &rows {
            let k = r.k.map_or("-".into(), |v| v.to_string());
            let n = r.n.map_or("-".into(), |v| v.to_string());
            let mut line = format!(
                "{:<width$}  {:<6} {:>4} {:>8}  {:<7} {:<8} {:<13}",
                r.path,
                r.status,
                k,
                n,
                yes_no(r.level1),
                yes_no(r.flexible),
                yes_no(r.single_peaked)
            );
            if let Some(e) = &r.error {
                line.push_str("  ");
                line.push_str(e);
            }
            writeln!(out, "{}", line.trim_end())?;
        }
        writeln!(
            out,
            "parsed {} of {} files ({} failed): level-1 {}, flexible {}, single-peaked {}",
            totals.parsed,
            totals.files,
            totals.failed,
            totals.level1,
            totals.flexible,
            totals.single_peaked
        )
    })()
    .map_err(stdout_error)
}
