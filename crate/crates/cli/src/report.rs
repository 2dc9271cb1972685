use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::config::{Format, RunConfig};

pub const TOOL: &str = "ks";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
/// Bumped whenever the JSON layout of a report changes incompatibly.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Default, Serialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: &str, columns: &[&str]) -> Self {
        Table { title: title.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// What a subcommand hands back before it is wrapped in the envelope.
#[derive(Debug, Default)]
pub struct Report {
    pub results: Value,
    /// How each reported quantity was obtained, keyed by result field.
    pub provenance: BTreeMap<String, String>,
    pub notes: Vec<String>,
    pub table: Table,
    pub plot: Option<Table>,
    /// False when a check inside the run failed (selftest, rep).
    pub passed: bool,
}

impl Report {
    pub fn new(results: Value, table: Table) -> Self {
        Report { results, table, passed: true, ..Default::default() }
    }

    pub fn provenance(mut self, key: &str, how: &str) -> Self {
        self.provenance.insert(key.into(), how.into());
        self
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    tool: &'static str,
    version: &'static str,
    schema_version: u32,
    config: &'a RunConfig,
    passed: bool,
    results: &'a Value,
    provenance: &'a BTreeMap<String, String>,
    notes: &'a [String],
}

fn config_line(config: &RunConfig) -> String {
    serde_json::to_string(config).expect("config serializes")
}

fn write_csv(out: &mut String, table: &Table) {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.columns).expect("in-memory write");
    for row in &table.rows {
        w.write_record(row).expect("in-memory write");
    }
    out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8"));
}

fn comment_header(out: &mut String, config: &RunConfig, title: &str) {
    let _ = writeln!(out, "# {TOOL} {VERSION} (schema {SCHEMA_VERSION})");
    let _ = writeln!(out, "# {title}");
    let _ = writeln!(out, "# config: {}", config_line(config));
}

fn aligned(table: &Table) -> String {
    let mut widths: Vec<usize> = table.columns.iter().map(|c| c.chars().count()).collect();
    for row in &table.rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| -> String {
        let padded: Vec<String> =
            cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}", w = *w)).collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = String::new();
    let _ = writeln!(out, "{}", line(&table.columns));
    let _ = writeln!(out, "{}", widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "));
    for row in &table.rows {
        let _ = writeln!(out, "{}", line(row));
    }
    out
}

/// The report as printed on stdout.
pub fn render(config: &RunConfig, report: &Report) -> String {
    match config.format {
        Format::Json => {
            let env = Envelope {
                tool: TOOL,
                version: VERSION,
                schema_version: SCHEMA_VERSION,
                config,
                passed: report.passed,
                results: &report.results,
                provenance: &report.provenance,
                notes: &report.notes,
            };
            let mut s = serde_json::to_string_pretty(&env).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::new();
            comment_header(&mut s, config, &report.table.title);
            for n in &report.notes {
                let _ = writeln!(s, "# note: {n}");
            }
            write_csv(&mut s, &report.table);
            s
        }
        Format::Table => {
            let mut s = format!("{}\n\n", report.table.title);
            s.push_str(&aligned(&report.table));
            for n in &report.notes {
                let _ = writeln!(s, "note: {n}");
            }
            s
        }
    }
}

/// Plot-ready CSV with `#` header comments. A report without a plot section
/// produces a header-only file.
pub fn emit_plotdata(config: &RunConfig, report: &Report, path: &Path) -> std::io::Result<()> {
    let empty = Table::new("no plot data for this subcommand", &[]);
    let table = report.plot.as_ref().unwrap_or(&empty);
    let mut s = String::new();
    comment_header(&mut s, config, &table.title);
    if !table.columns.is_empty() {
        write_csv(&mut s, table);
    }
    let mut f = std::fs::File::create(path)?;
    f.write_all(s.as_bytes())
}
