//! Suite reports and their JSON/CSV serialization.

use std::path::Path;
use std::time::Duration;

use serde_json::{json, Map, Value};

use crate::config::ExperimentConfig;
use crate::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

/// One named assertion.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Verdicts, counts and witnesses.
    pub detail: Value,
    pub elapsed: Duration,
}

/// Rows for the CSV summary.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub parameters: Value,
    pub checks: Vec<Check>,
    pub table: Table,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Full report; everything except `timing` is deterministic.
    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
            .collect();
        let mut timing = Map::new();
        timing.insert("total_ms".into(), json!(millis(self.elapsed)));
        for c in &self.checks {
            timing.insert(c.name.clone(), json!(millis(c.elapsed)));
        }
        json!({
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "seed": self.seed,
            "parameters": self.parameters,
            "passed": self.passed(),
            "checks": checks,
            "summary": {
                "header": self.table.header,
                "rows": self.table.rows,
            },
            "timing": timing,
        })
    }

    /// The summary table; it carries no timing data.
    pub fn to_csv(&self) -> CliResult<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let out = |e: csv::Error| CliError::Output(e.to_string());
        w.write_record(&self.table.header).map_err(out)?;
        for r in &self.table.rows {
            w.write_record(r).map_err(out)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| CliError::Output(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
    }

    /// One CSV line per check: name, pass flag.
    pub fn checks_csv(&self) -> CliResult<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let out = |e: csv::Error| CliError::Output(e.to_string());
        w.write_record(["suite", "check", "passed"]).map_err(out)?;
        for c in &self.checks {
            w.write_record([
                self.suite.as_str(),
                c.name.as_str(),
                if c.passed { "true" } else { "false" },
            ])
            .map_err(out)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| CliError::Output(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
    }
}

fn millis(d: Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

/// Writes `<suite>.json`, `<suite>.csv` and `<suite>.checks.csv` into `dir`.
pub fn write(report: &SuiteReport, config: &ExperimentConfig, dir: &Path) -> CliResult<()> {
    let dir = config.resolve(dir);
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CliError::Io { path, source }
    };
    std::fs::create_dir_all(&dir).map_err(io(&dir))?;
    let json = serde_json::to_string_pretty(&report.to_json())
        .map_err(|e| CliError::Output(e.to_string()))?;
    let files = [
        (format!("{}.json", report.suite), json + "\n"),
        (format!("{}.csv", report.suite), report.to_csv()?),
        (format!("{}.checks.csv", report.suite), report.checks_csv()?),
    ];
    for (name, text) in files {
        let path = dir.join(name);
        std::fs::write(&path, text).map_err(io(&path))?;
    }
    Ok(())
}
