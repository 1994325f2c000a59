//! Deterministic reports: json-lines (versioned) and plain text.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// One named check. `verdict: None` marks purely informational output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub verdict: Option<bool>,
    pub summary: String,
    pub data: Value,
}

impl Check {
    pub fn info(name: &str, summary: impl Into<String>, data: Value) -> Self {
        Check {
            name: name.into(),
            verdict: None,
            summary: summary.into(),
            data,
        }
    }

    pub fn verdict(name: &str, ok: bool, summary: impl Into<String>, data: Value) -> Self {
        Check {
            name: name.into(),
            verdict: Some(ok),
            summary: summary.into(),
            data,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    /// sha256 of the instance file.
    pub instance: Option<String>,
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    pub timing_ms: Option<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Line {
    Header {
        schema: u32,
        command: String,
        instance: Option<String>,
        seed: Option<u64>,
    },
    Check(Check),
    Footer {
        verdict: bool,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        timing_ms: Option<u64>,
    },
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            command: command.into(),
            instance: None,
            seed: None,
            checks: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    /// Every check that carries a verdict passed.
    pub fn verdict(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Some(false))
    }

    pub fn exit_code(&self) -> i32 {
        if self.verdict() {
            0
        } else {
            1
        }
    }

    pub fn to_json_lines(&self) -> String {
        let mut lines = vec![Line::Header {
            schema: self.schema,
            command: self.command.clone(),
            instance: self.instance.clone(),
            seed: self.seed,
        }];
        lines.extend(self.checks.iter().cloned().map(Line::Check));
        lines.push(Line::Footer {
            verdict: self.verdict(),
            timing_ms: self.timing_ms,
        });
        let mut out = String::new();
        for l in &lines {
            out.push_str(&serde_json::to_string(l).expect("serialisable"));
            out.push('\n');
        }
        out
    }

    /// Inverse of [`to_json_lines`](Self::to_json_lines). The footer verdict
    /// must agree with the checks.
    pub fn from_json_lines(src: &str) -> Result<Report> {
        let bad = |line: usize, what: &str| Error::Parse {
            line,
            col: 1,
            expected: what.into(),
        };
        let mut report: Option<Report> = None;
        let mut footer: Option<(usize, bool)> = None;
        for (i, raw) in src.lines().enumerate() {
            let n = i + 1;
            if raw.trim().is_empty() {
                continue;
            }
            if footer.is_some() {
                return Err(bad(n, "end of input after the footer"));
            }
            let line: Line = serde_json::from_str(raw).map_err(|e| bad(n, &format!("a report line ({e})")))?;
            match (line, report.as_mut()) {
                (
                    Line::Header {
                        schema,
                        command,
                        instance,
                        seed,
                    },
                    None,
                ) => {
                    if schema != SCHEMA_VERSION {
                        return Err(bad(n, &format!("schema {SCHEMA_VERSION}")));
                    }
                    report = Some(Report {
                        schema,
                        command,
                        instance,
                        seed,
                        checks: Vec::new(),
                        timing_ms: None,
                    });
                }
                (Line::Check(c), Some(r)) => r.checks.push(c),
                (Line::Footer { verdict, timing_ms }, Some(r)) => {
                    r.timing_ms = timing_ms;
                    footer = Some((n, verdict));
                }
                (_, None) => return Err(bad(n, "a header line first")),
                (Line::Header { .. }, Some(_)) => return Err(bad(n, "a single header")),
            }
        }
        let report = report.ok_or_else(|| bad(1, "a header line"))?;
        let (n, verdict) = footer.ok_or_else(|| bad(src.lines().count() + 1, "a footer line"))?;
        if verdict != report.verdict() {
            return Err(bad(n, "a footer verdict matching the checks"));
        }
        Ok(report)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        writeln!(w, "semigalois {} (schema {})", self.command, self.schema).expect("string write");
        if let Some(d) = &self.instance {
            writeln!(w, "instance {d}").expect("string write");
        }
        if let Some(s) = self.seed {
            writeln!(w, "seed {s}").expect("string write");
        }
        for c in &self.checks {
            let tag = match c.verdict {
                Some(true) => "PASS",
                Some(false) => "FAIL",
                None => "INFO",
            };
            writeln!(w, "[{tag}] {}: {}", c.name, c.summary).expect("string write");
            if !c.data.is_null() {
                writeln!(w, "       {}", c.data).expect("string write");
            }
        }
        if let Some(t) = self.timing_ms {
            writeln!(w, "time {t} ms").expect("string write");
        }
        writeln!(w, "verdict {}", if self.verdict() { "PASS" } else { "FAIL" }).expect("string write");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Report {
        let mut r = Report::new("galois");
        r.instance = Some("ab".repeat(32));
        r.push(Check::verdict(
            "coordinates",
            true,
            "found",
            json!({"pairs": [[[1, 0], [1, 0]]]}),
        ));
        r.push(Check::info("order", "3 elements", Value::Null));
        r
    }

    #[test]
    fn json_lines_round_trip() {
        let r = sample();
        let text = r.to_json_lines();
        assert_eq!(Report::from_json_lines(&text).unwrap(), r);
        assert_eq!(text, sample().to_json_lines());
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn tampered_footer_rejected() {
        let text = sample()
            .to_json_lines()
            .replace("\"verdict\":true}", "\"verdict\":false}");
        assert!(matches!(Report::from_json_lines(&text), Err(Error::Parse { .. })));
    }

    #[test]
    fn failing_check_sets_exit_code() {
        let mut r = sample();
        r.push(Check::verdict("psi", false, "not injective", Value::Null));
        assert_eq!(r.exit_code(), 1);
        assert!(r.to_text().contains("[FAIL] psi"));
    }
}
