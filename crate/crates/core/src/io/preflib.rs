use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::prefcore::{Preference, Profile};

/// One line of the `#`-prefixed header, kept in file order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum HeaderLine {
    /// `# KEY: value`.
    Meta { key: String, value: String },
    /// Any other `#` line; holds the text after the `#` verbatim.
    Comment { text: String },
}

/// A strict-order (SOC) PrefLib document.
///
/// Alternatives are stored 0-based; the file uses 1-based labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreflibDocument {
    pub header: Vec<HeaderLine>,
    pub k: usize,
    /// 0-based index to display name, from `ALTERNATIVE NAME i` entries.
    pub alternative_names: BTreeMap<usize, String>,
    /// `(count, ranking)` in file order; every count is positive.
    pub ballots: Vec<(u64, Preference)>,
}

const NAME_PREFIX: &str = "ALTERNATIVE NAME ";

impl PreflibDocument {
    /// Header value for `key`, compared case-insensitively.
    pub fn meta(&self, key: &str) -> Option<&str> {
        self.header.iter().find_map(|h| match h {
            HeaderLine::Meta { key: k, value } if k.eq_ignore_ascii_case(key) => {
                Some(value.as_str())
            }
            _ => None,
        })
    }

    pub fn n_voters(&self) -> u64 {
        self.ballots.iter().map(|(c, _)| c).sum()
    }

    /// Names for display, falling back to the 1-based label.
    pub fn display_names(&self) -> Vec<String> {
        (0..self.k)
            .map(|i| {
                self.alternative_names
                    .get(&i)
                    .cloned()
                    .unwrap_or_else(|| (i + 1).to_string())
            })
            .collect()
    }

    pub fn to_profile(&self) -> Result<Profile> {
        Profile::from_counts(self.ballots.iter().map(|(c, p)| (p.clone(), *c)))
    }

    /// Serializes back to SOC text. Canonically formatted input is
    /// reproduced byte for byte.
    pub fn to_soc_string(&self) -> String {
        let mut out = String::new();
        for h in &self.header {
            match h {
                HeaderLine::Meta { key, value } => writeln!(out, "# {key}: {value}"),
                HeaderLine::Comment { text } => writeln!(out, "#{text}"),
            }
            .expect("writing to a String");
        }
        for (count, pref) in &self.ballots {
            let labels: Vec<String> = pref.alternatives().map(|a| (a + 1).to_string()).collect();
            writeln!(out, "{count}: {}", labels.join(",")).expect("writing to a String");
        }
        out
    }
}

fn parse_header(body: &str) -> HeaderLine {
    if let Some((key, value)) = body.strip_prefix(' ').and_then(|b| b.split_once(": ")) {
        if !key.is_empty()
            && key
                .chars()
                .all(|c| c.is_ascii_uppercase() || c.is_ascii_digit() || c == ' ')
        {
            return HeaderLine::Meta {
                key: key.to_string(),
                value: value.to_string(),
            };
        }
    }
    HeaderLine::Comment {
        text: body.to_string(),
    }
}

fn header_number(header: &[(usize, HeaderLine)], key: &str) -> Result<Option<(usize, u64)>> {
    for (line, h) in header {
        if let HeaderLine::Meta { key: k, value } = h {
            if k == key {
                let v = value.trim().parse::<u64>().map_err(|_| Error::Parse {
                    line: *line,
                    message: format!("{key} is not a non-negative integer: {value:?}"),
                })?;
                return Ok(Some((*line, v)));
            }
        }
    }
    Ok(None)
}

/// Parses PrefLib SOC text: `#` header lines, then `count: a,b,c` lines
/// with 1-based alternative labels.
///
/// Tied groups (`{..}`), incomplete rankings and a `DATA TYPE` other than
/// `soc` are rejected with [`Error::UnsupportedFormat`]; malformed counts or
/// labels give [`Error::Parse`]. Line numbers are 1-based.
///
/// ```
/// use flexcon::io::parse_preflib;
///
/// let doc = parse_preflib("3: 1,2,3\n2: 3,2,1\n").unwrap();
/// let profile = doc.to_profile().unwrap();
/// assert_eq!((profile.n(), profile.n_distinct()), (5, 2));
/// ```
pub fn parse_preflib(text: &str) -> Result<PreflibDocument> {
    let mut header: Vec<(usize, HeaderLine)> = Vec::new();
    let mut raw_ballots: Vec<(usize, u64, Vec<usize>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim_end_matches('\r');
        if let Some(body) = trimmed.strip_prefix('#') {
            if !raw_ballots.is_empty() {
                return Err(Error::Parse {
                    line,
                    message: "header line after the first ballot".into(),
                });
            }
            header.push((line, parse_header(body)));
            continue;
        }
        if trimmed.trim().is_empty() {
            continue;
        }
        let (count_str, order_str) = trimmed.split_once(':').ok_or_else(|| Error::Parse {
            line,
            message: format!("expected `count: ranking`, got {trimmed:?}"),
        })?;
        let count = count_str.trim().parse::<u64>().map_err(|_| Error::Parse {
            line,
            message: format!("malformed count {:?}", count_str.trim()),
        })?;
        if count == 0 {
            return Err(Error::Parse {
                line,
                message: "count must be positive".into(),
            });
        }
        if order_str.contains('{') || order_str.contains('}') {
            return Err(Error::UnsupportedFormat {
                line,
                message: "tied alternatives; only strict complete orders are supported".into(),
            });
        }
        let labels = order_str
            .split(',')
            .map(|t| {
                let t = t.trim();
                match t.parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(Error::Parse {
                        line,
                        message: format!("malformed alternative label {t:?}"),
                    }),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        raw_ballots.push((line, count, labels));
    }

    for (line, h) in &header {
        if let HeaderLine::Meta { key, value } = h {
            if key == "DATA TYPE" && !value.trim().eq_ignore_ascii_case("soc") {
                return Err(Error::UnsupportedFormat {
                    line: *line,
                    message: format!("data type {value:?}; only soc is supported"),
                });
            }
        }
    }

    let declared = header_number(&header, "NUMBER ALTERNATIVES")?;
    let k = match declared {
        Some((_, v)) => v as usize,
        None => raw_ballots
            .iter()
            .flat_map(|(_, _, l)| l.iter().map(|a| a + 1))
            .max()
            .unwrap_or(0),
    };

    let mut ballots = Vec::with_capacity(raw_ballots.len());
    for (line, count, labels) in raw_ballots {
        if let Some(&bad) = labels.iter().find(|&&a| a >= k) {
            return Err(Error::Parse {
                line,
                message: format!("alternative {} exceeds the {k} declared", bad + 1),
            });
        }
        let mut seen = vec![false; k];
        for &a in &labels {
            if std::mem::replace(&mut seen[a], true) {
                return Err(Error::Parse {
                    line,
                    message: format!("alternative {} appears twice", a + 1),
                });
            }
        }
        if labels.len() < k {
            return Err(Error::UnsupportedFormat {
                line,
                message: format!(
                    "partial ranking of {} out of {k} alternatives",
                    labels.len()
                ),
            });
        }
        let pref = Preference::new(labels).map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        ballots.push((count, pref));
    }

    let voters: u64 = ballots.iter().map(|(c, _)| c).sum();
    if let Some((line, v)) = header_number(&header, "NUMBER VOTERS")? {
        if v != voters {
            return Err(Error::Parse {
                line,
                message: format!("declares {v} voters, ballots sum to {voters}"),
            });
        }
    }
    if let Some((line, v)) = header_number(&header, "NUMBER UNIQUE ORDERS")? {
        if v != ballots.len() as u64 {
            return Err(Error::Parse {
                line,
                message: format!("declares {v} unique orders, found {}", ballots.len()),
            });
        }
    }

    let mut alternative_names = BTreeMap::new();
    for (line, h) in &header {
        if let HeaderLine::Meta { key, value } = h {
            if let Some(idx) = key.strip_prefix(NAME_PREFIX) {
                let i = idx
                    .trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|&i| i >= 1 && i <= k);
                let i = i.ok_or_else(|| Error::Parse {
                    line: *line,
                    message: format!("bad alternative index {idx:?}"),
                })?;
                alternative_names.insert(i - 1, value.clone());
            }
        }
    }

    Ok(PreflibDocument {
        header: header.into_iter().map(|(_, h)| h).collect(),
        k,
        alternative_names,
        ballots,
    })
}
