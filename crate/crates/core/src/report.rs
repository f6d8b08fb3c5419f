//! Rendering of a [`RunReport`] as human text, JSON, or CSV.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::harness::RunReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Human,
    Structured,
    Tabular,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "human" => Ok(Format::Human),
            "structured" => Ok(Format::Structured),
            "tabular" => Ok(Format::Tabular),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

pub const TABULAR_HEADER: [&str; 4] = ["ideal", "check", "verdict", "witness"];

pub fn emit_report(report: &RunReport, format: Format) -> String {
    match format {
        Format::Human => human(report),
        Format::Structured => structured(report),
        Format::Tabular => tabular(report),
    }
}

/// Parses a structured report back.
pub fn parse_structured(text: &str) -> Result<RunReport, serde_json::Error> {
    serde_json::from_str(text)
}

fn structured(report: &RunReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

fn meta_lines(report: &RunReport) -> Vec<(String, String)> {
    let m = &report.meta;
    let mut out = vec![
        ("command".to_string(), m.command.clone()),
        ("inputs".to_string(), m.inputs.join("; ")),
        (
            "envelope".to_string(),
            m.envelope.clone().unwrap_or_else(|| "-".into()),
        ),
        ("exhaustive".to_string(), m.exhaustive.to_string()),
    ];
    if let Some(seed) = m.seed {
        out.push(("seed".to_string(), seed.to_string()));
    }
    let s = &report.summary;
    out.extend([
        ("ideals".to_string(), s.ideals.to_string()),
        ("checked".to_string(), s.checked.to_string()),
        ("passed".to_string(), s.passed.to_string()),
        ("failed".to_string(), s.failed.to_string()),
        ("skipped".to_string(), s.skipped.to_string()),
    ]);
    out
}

fn human(report: &RunReport) -> String {
    let mut out = String::new();
    let meta = meta_lines(report);
    let key_w = meta.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in &meta {
        let _ = writeln!(out, "{k:<key_w$}  {v}");
    }
    out.push('\n');

    let cols = |r: &crate::harness::CheckRecord| {
        [
            r.ideal.clone(),
            r.check.to_string(),
            r.verdict.to_string(),
            r.witness.clone().unwrap_or_default(),
        ]
    };
    let rows: Vec<[String; 4]> = report.records.iter().map(cols).collect();
    let mut widths = TABULAR_HEADER.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: [&str; 4]| {
        let mut l = String::new();
        for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
            if i + 1 == cells.len() {
                l.push_str(cell);
            } else {
                let pad = w - cell.chars().count();
                l.push_str(cell);
                l.push_str(&" ".repeat(pad + 2));
            }
        }
        l.trim_end().to_string()
    };
    let _ = writeln!(out, "{}", line(TABULAR_HEADER));
    for row in &rows {
        let _ = writeln!(out, "{}", line([&row[0], &row[1], &row[2], &row[3]]));
    }
    if !report.findings.is_empty() {
        out.push_str("\nfindings\n");
        for f in &report.findings {
            let _ = writeln!(out, "  {}  [{}]  {}", f.ideal, f.check, f.note);
        }
    }
    out
}

fn tabular(report: &RunReport) -> String {
    let mut out = String::new();
    for (k, v) in meta_lines(report) {
        let _ = writeln!(out, "# {k}: {v}");
    }
    for f in &report.findings {
        let _ = writeln!(out, "# finding: {} [{}] {}", f.ideal, f.check, f.note);
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(TABULAR_HEADER).expect("in-memory write");
    for r in &report.records {
        w.write_record([
            r.ideal.as_str(),
            r.check.name(),
            &r.verdict.to_string(),
            r.witness.as_deref().unwrap_or(""),
        ])
        .expect("in-memory write");
    }
    let bytes = w.into_inner().expect("in-memory flush");
    out.push_str(&String::from_utf8(bytes).expect("utf-8 input"));
    out
}
