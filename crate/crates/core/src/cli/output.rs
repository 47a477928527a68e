use super::config::sha256_hex;
use crate::error::Result;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    F(f64),
    I(i64),
    S(String),
    B(bool),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::F(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::I(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::B(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::S(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::S(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::S(String::new()), Cell::F)
    }
}

/// `digits` significant digits in scientific notation.
pub fn format_float(v: f64, digits: usize) -> String {
    if v.is_finite() {
        format!("{:.*e}", digits.saturating_sub(1), v)
    } else {
        format!("{v}")
    }
}

/// Writes CSV tables into one directory and a manifest of their hashes.
#[derive(Debug)]
pub struct ReportWriter {
    dir: PathBuf,
    precision: usize,
    files: Vec<(String, usize, String)>,
}

impl ReportWriter {
    pub fn new(dir: &Path, precision: usize) -> Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Self {
            dir: dir.to_path_buf(),
            precision,
            files: Vec::new(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn render(&self, cell: &Cell, out: &mut String) {
        match cell {
            Cell::F(v) => out.push_str(&format_float(*v, self.precision)),
            Cell::I(v) => {
                let _ = write!(out, "{v}");
            }
            Cell::S(s) => out.push_str(s),
            Cell::B(b) => out.push_str(if *b { "true" } else { "false" }),
        }
    }

    /// Writes `name` with a single header row.
    pub fn table(&mut self, name: &str, header: &[&str], rows: &[Vec<Cell>]) -> Result<()> {
        let mut text = header.join(",");
        text.push('\n');
        for row in rows {
            for (i, c) in row.iter().enumerate() {
                if i > 0 {
                    text.push(',');
                }
                self.render(c, &mut text);
            }
            text.push('\n');
        }
        fs::write(self.dir.join(name), &text)?;
        self.files.push((name.to_string(), text.len(), sha256_hex(text.as_bytes())));
        Ok(())
    }

    /// Two-column `key,value` table.
    pub fn key_values(&mut self, name: &str, rows: Vec<(&str, Cell)>) -> Result<()> {
        let rows: Vec<Vec<Cell>> = rows.into_iter().map(|(k, v)| vec![Cell::from(k), v]).collect();
        self.table(name, &["key", "value"], &rows)
    }

    /// Writes `manifest.csv` and returns every path written.
    pub fn finish(self) -> Result<Vec<PathBuf>> {
        let mut text = String::from("file,bytes,sha256\n");
        for (name, bytes, hash) in &self.files {
            let _ = writeln!(text, "{name},{bytes},{hash}");
        }
        fs::write(self.dir.join("manifest.csv"), text)?;
        let mut paths: Vec<PathBuf> = self.files.iter().map(|f| self.dir.join(&f.0)).collect();
        paths.push(self.dir.join("manifest.csv"));
        Ok(paths)
    }
}
