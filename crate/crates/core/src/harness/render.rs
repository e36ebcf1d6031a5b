//! Human-readable rendering of check reports.

use std::fmt::Write as _;

use serde_json::Value;

use super::{CheckReport, Summary};

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn params_cell(r: &CheckReport) -> String {
    r.params
        .iter()
        .map(|(k, v)| format!("{k}={}", compact(v)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// An aligned table, one row per report, followed by the verdict summary.
/// An expected value equal to the observed one is shown as `(same)`.
pub fn render_table(reports: &[CheckReport]) -> String {
    let header = ["check", "params", "status", "observed", "expected", "ms"];
    let rows: Vec<[String; 6]> = reports
        .iter()
        .map(|r| {
            [
                r.check_id.clone(),
                params_cell(r),
                r.status.to_string(),
                compact(&r.observed),
                if r.observed == r.expected {
                    "(same)".into()
                } else {
                    compact(&r.expected)
                },
                r.runtime_ms.to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[&str]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(&header);
    for row in &rows {
        line(&row.each_ref().map(String::as_str));
    }
    let _ = writeln!(out, "\n{}", Summary::of(reports));
    out
}
