//! Rendering of check reports and the matching process exit code.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::verifier::{CheckReport, Status};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    Json,
    #[default]
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(Error::Guard(format!("unknown format `{other}` (json or text)"))),
        }
    }
}

/// 0 if every check passed, 1 if any failed, 2 if any raised an error.
pub fn exit_code(reports: &[CheckReport]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Error) {
        2
    } else if reports.iter().any(|r| r.status == Status::Fail) {
        1
    } else {
        0
    }
}

fn params_text(r: &CheckReport) -> String {
    // `n` first, the rest in key order
    let mut parts: Vec<String> = r.params.get("n").map(|n| format!("n={n}")).into_iter().collect();
    parts.extend(
        r.params
            .iter()
            .filter(|(k, _)| *k != "n")
            .map(|(k, v)| format!("{k}={v}")),
    );
    parts.join(",")
}

pub fn emit_report(reports: &[CheckReport], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => text(reports),
    }
}

fn text(reports: &[CheckReport]) -> String {
    let rows: Vec<[String; 4]> = reports
        .iter()
        .map(|r| {
            [
                r.status.to_string(),
                r.check.clone(),
                params_text(r),
                r.elapsed_ms.to_string(),
            ]
        })
        .collect();
    let header = ["status", "check", "params", "elapsed_ms"].map(String::from);
    let mut widths = header.clone().map(|h| h.len());
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(&header).chain(&rows) {
        let line = row
            .iter()
            .zip(widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        let _ = writeln!(out, "{}", line.trim_end());
    }
    for r in reports.iter().filter(|r| r.status != Status::Pass) {
        let _ = writeln!(out, "\n{} {} ({})", r.status, r.check, params_text(r));
        let _ = writeln!(out, "  lhs: {}", r.lhs);
        let _ = writeln!(out, "  rhs: {}", r.rhs);
    }
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    let _ = writeln!(
        out,
        "\n{} checks: {} pass, {} fail, {} error",
        reports.len(),
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Error)
    );
    out
}
