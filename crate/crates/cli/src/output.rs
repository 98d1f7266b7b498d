//! Deterministic output formatting: every float is printed with 17
//! significant digits (round-trip exact), so identical jobs produce
//! byte-identical files.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};

pub fn fmt(x: f64) -> String {
    format!("{:.16e}", x)
}

pub fn write_text(dir: &Path, name: &str, content: &str) -> Result<()> {
    fs::create_dir_all(dir)
        .with_context(|| format!("creating output directory {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, content).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// CSV assembly with a fixed header and formatted float rows.
pub struct Csv {
    lines: Vec<String>,
}

impl Csv {
    pub fn new(header: &str) -> Self {
        Csv { lines: vec![header.to_string()] }
    }

    pub fn row(&mut self, values: &[f64]) {
        let cells: Vec<String> = values.iter().map(|v| fmt(*v)).collect();
        self.lines.push(cells.join(","));
    }

    pub fn row_mixed(&mut self, prefix: &[String], values: &[f64]) {
        let mut cells = prefix.to_vec();
        cells.extend(values.iter().map(|v| fmt(*v)));
        self.lines.push(cells.join(","));
    }

    pub fn finish(self) -> String {
        let mut out = self.lines.join("\n");
        out.push('\n');
        out
    }
}
