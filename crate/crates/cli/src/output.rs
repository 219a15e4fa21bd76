//! JSON/CSV artifacts and the run manifest.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};

/// A plot-ready table: `#`-prefixed comment lines, then a `#`-prefixed
/// column line, then the rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub file: String,
    pub comments: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(file: &str, columns: &[&str]) -> Self {
        Table {
            file: file.to_string(),
            comments: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn comment(mut self, line: impl Into<String>) -> Self {
        self.comments.push(line.into());
        self
    }

    pub fn push<T: ToString>(&mut self, row: &[T]) {
        self.rows.push(row.iter().map(|v| v.to_string()).collect());
    }

    pub fn to_csv(&self) -> CliResult<String> {
        let mut out = String::new();
        for c in &self.comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        out.push_str("# ");
        out.push_str(&self.columns.join(","));
        out.push('\n');
        let mut w = csv::Writer::from_writer(Vec::new());
        let fail = |e: csv::Error| CliError::bad_input(format!("CSV encoding failed: {e}"));
        for r in &self.rows {
            w.write_record(r).map_err(fail)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::bad_input(e.to_string()))?;
        out.push_str(&String::from_utf8_lossy(&bytes));
        Ok(out)
    }
}

/// Everything one subcommand produces.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub parameters: Value,
    pub payload: Value,
    /// Extra JSON files, e.g. the class table.
    pub documents: Vec<(String, Value)>,
    pub tables: Vec<Table>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, parameters: impl Serialize, payload: Value) -> Self {
        Report {
            command,
            parameters: serde_json::to_value(parameters).unwrap_or(Value::Null),
            payload,
            documents: Vec::new(),
            tables: Vec::new(),
            warnings: Vec::new(),
        }
    }
}

pub fn to_json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn write(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// Writes the payload, documents, tables and `manifest.json` into `dir`.
/// Returns the files written, manifest last.
pub fn write_report(report: &Report, dir: &Path) -> CliResult<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut files: Vec<(String, &'static str)> = Vec::new();
    let main = format!("{}.json", report.command);
    write(&dir.join(&main), &to_json_text(&report.payload))?;
    files.push((main, "json"));
    for (name, doc) in &report.documents {
        write(&dir.join(name), &to_json_text(doc))?;
        files.push((name.clone(), "json"));
    }
    for t in &report.tables {
        write(&dir.join(&t.file), &t.to_csv()?)?;
        files.push((t.file.clone(), "csv"));
    }
    let manifest = json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "command": report.command,
        "parameters": report.parameters,
        "outputs": files.iter().map(|(f, kind)| json!({"file": f, "format": kind})).collect::<Vec<_>>(),
        "warnings": report.warnings,
        "created": chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
    });
    write(&dir.join("manifest.json"), &to_json_text(&manifest))?;
    let mut paths: Vec<PathBuf> = files.iter().map(|(f, _)| dir.join(f)).collect();
    paths.push(dir.join("manifest.json"));
    Ok(paths)
}
