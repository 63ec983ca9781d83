//! Deterministic tabular output. Floats are printed with Rust's shortest
//! round-trip formatting; no timestamps or environment-dependent content
//! ever enters a data file, so identical runs produce identical bytes.

use crate::config::{CmdResult, Failure, Format};
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Clone)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv_field(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json_value(&self) -> serde_json::Value {
        match self {
            Cell::Int(v) => serde_json::json!(v),
            Cell::Float(v) => serde_json::json!(v),
            Cell::Text(s) => serde_json::json!(s),
            Cell::Bool(b) => serde_json::json!(b),
            Cell::Empty => serde_json::Value::Null,
        }
    }
}

pub struct Table {
    /// Metadata lines; emitted as `# key=value` comments before the CSV
    /// header, or as a string list in JSON.
    pub preamble: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Table {
            preamble: Vec::new(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.preamble.push(line.into());
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, path: &Path, format: Format) -> CmdResult<()> {
        if let Some(dir) = path.parent() {
            if !dir.as_os_str().is_empty() {
                std::fs::create_dir_all(dir)?;
            }
        }
        match format {
            Format::Csv => self.write_csv(path),
            Format::Json => self.write_json(path),
        }
    }

    fn write_csv(&self, path: &Path) -> CmdResult<()> {
        let mut file = std::fs::File::create(path)?;
        for line in &self.preamble {
            writeln!(file, "# {line}")?;
        }
        let mut w = csv::Writer::from_writer(file);
        w.write_record(&self.columns)
            .map_err(|e| Failure::Config(format!("csv: {e}")))?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.csv_field()))
                .map_err(|e| Failure::Config(format!("csv: {e}")))?;
        }
        w.flush()?;
        Ok(())
    }

    fn write_json(&self, path: &Path) -> CmdResult<()> {
        let value = serde_json::json!({
            "preamble": self.preamble,
            "columns": self.columns,
            "rows": self.rows.iter()
                .map(|r| r.iter().map(|c| c.json_value()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        });
        let mut file = std::fs::File::create(path)?;
        serde_json::to_writer(&mut file, &value)
            .map_err(|e| Failure::Config(format!("json: {e}")))?;
        writeln!(file)?;
        Ok(())
    }
}

/// Resolves the output path for a single-file command: an explicit file
/// path is used as-is, a directory (existing, or spelled with a trailing
/// separator) receives the default stem, and no path means the current
/// directory.
pub fn single_file(out: Option<&Path>, stem: &str, format: Format) -> PathBuf {
    let name = format!("{stem}.{}", format.extension());
    match out {
        None => PathBuf::from(name),
        Some(p) => {
            let spelled_dir = p.as_os_str().to_string_lossy().ends_with('/');
            if p.is_dir() || spelled_dir {
                p.join(name)
            } else {
                p.to_path_buf()
            }
        }
    }
}

/// Resolves the output directory for a multi-file command.
pub fn out_dir(out: Option<&Path>) -> CmdResult<PathBuf> {
    let dir = out.map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir)?;
    Ok(dir)
}
