//! Report writing. CSV files start with `# key: value` metadata lines and
//! then a fixed header; JSON documents carry `"schema": 1` and a `meta` block.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// A tabular result with an equivalent JSON payload.
pub struct Report {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub data: Value,
    /// Extra `key: value` lines for CSV metadata; merged into JSON `meta.summary`.
    pub summary: Vec<(String, String)>,
}

impl Report {
    pub fn new(columns: Vec<String>, rows: Vec<Vec<String>>, data: Value) -> Self {
        Report { columns, rows, data, summary: Vec::new() }
    }

    pub fn with_summary(mut self, key: &str, value: impl ToString) -> Self {
        self.summary.push((key.to_string(), value.to_string()));
        self
    }
}

pub struct Meta {
    pub command: String,
    pub config: Value,
    pub seed: u64,
    pub clock: bool,
    pub invariants: Vec<&'static str>,
}

fn wall_clock() -> String {
    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    format!("unix:{secs}")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render(report: &Report, meta: &Meta, format: Format) -> Result<String> {
    let clock = if meta.clock { Some(wall_clock()) } else { None };
    match format {
        Format::Csv => {
            let mut s = String::new();
            s.push_str(&format!("# tool: hsplab {}\n", env!("CARGO_PKG_VERSION")));
            s.push_str(&format!("# schema: {SCHEMA}\n"));
            s.push_str(&format!("# command: {}\n", meta.command));
            s.push_str(&format!("# config: {}\n", serde_json::to_string(&meta.config)?));
            s.push_str(&format!("# seed: {}\n", meta.seed));
            if let Some(c) = &clock {
                s.push_str(&format!("# wall_clock: {c}\n"));
            }
            s.push_str(&format!("# invariants: {}\n", meta.invariants.join(" ")));
            for (k, v) in &report.summary {
                s.push_str(&format!("# {k}: {v}\n"));
            }
            s.push_str(&report.columns.join(","));
            s.push('\n');
            for row in &report.rows {
                if row.len() != report.columns.len() {
                    bail!("row has {} fields, header has {}", row.len(), report.columns.len());
                }
                let fields: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
                s.push_str(&fields.join(","));
                s.push('\n');
            }
            Ok(s)
        }
        Format::Json => {
            let summary: serde_json::Map<String, Value> =
                report.summary.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
            let doc = json!({
                "schema": SCHEMA,
                "meta": {
                    "tool": "hsplab",
                    "version": env!("CARGO_PKG_VERSION"),
                    "command": meta.command,
                    "config": meta.config,
                    "seed": meta.seed,
                    "wall_clock": clock,
                    "invariants_passed": meta.invariants,
                    "summary": summary,
                },
                "data": report.data,
            });
            let mut s = serde_json::to_string_pretty(&doc)?;
            s.push('\n');
            Ok(s)
        }
    }
}

pub fn write(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

/// The format implied by `--format`, else the output extension, else CSV.
pub fn resolve_format(explicit: Option<Format>, out: Option<&PathBuf>) -> Format {
    explicit.unwrap_or_else(|| match out.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
        Some("json") => Format::Json,
        _ => Format::Csv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn meta(clock: bool) -> Meta {
        Meta { command: "t".into(), config: json!({"n": 4}), seed: 7, clock, invariants: vec!["a", "b"] }
    }

    #[test]
    fn csv_has_metadata_then_header() {
        let r = Report::new(vec!["x".into(), "y".into()], vec![vec!["1".into(), "a,b".into()]], json!([])).with_summary("k", 3);
        let s = render(&r, &meta(false), Format::Csv).unwrap();
        let lines: Vec<&str> = s.lines().collect();
        assert!(lines[0].starts_with("# tool: hsplab"));
        assert!(lines.contains(&"# seed: 7"));
        assert!(lines.contains(&"# invariants: a b"));
        assert!(lines.contains(&"# k: 3"));
        assert_eq!(&lines[lines.len() - 2..], ["x,y", "1,\"a,b\""]);
        assert!(!s.contains("wall_clock"));
        assert!(render(&r, &meta(true), Format::Csv).unwrap().contains("# wall_clock: unix:"));
    }

    #[test]
    fn json_is_versioned() {
        let r = Report::new(vec!["x".into()], vec![], json!({"v": 1}));
        let v: Value = serde_json::from_str(&render(&r, &meta(false), Format::Json).unwrap()).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["meta"]["seed"], 7);
        assert_eq!(v["meta"]["wall_clock"], Value::Null);
        assert_eq!(v["data"]["v"], 1);
    }

    #[test]
    fn format_from_extension() {
        assert_eq!(resolve_format(None, Some(&PathBuf::from("a.json"))), Format::Json);
        assert_eq!(resolve_format(None, Some(&PathBuf::from("a.csv"))), Format::Csv);
        assert_eq!(resolve_format(Some(Format::Json), None), Format::Json);
    }
}
