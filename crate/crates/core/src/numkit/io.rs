use std::path::Path;

use super::vecd::VecD;
use crate::{Error, Result};

/// A sampled curve read from disk: parameter column plus d position columns.
#[derive(Debug, Clone)]
pub struct CurveTable {
    pub grid: Vec<f64>,
    pub positions: Vec<VecD>,
}

/// Reads a sampled curve from CSV with header `u,x0,x1[,x2[,x3]]`.
pub fn read_curve_csv(path: &Path) -> Result<CurveTable> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_path(path)?;
    let headers = reader.headers()?.clone();
    if headers.is_empty() || headers.get(0) != Some("u") {
        return Err(Error::BadTable("first column must be `u`".into()));
    }
    let dim = headers.len() - 1;
    if !(2..=4).contains(&dim) {
        return Err(Error::BadTable(format!(
            "expected 2..=4 coordinate columns, got {dim}"
        )));
    }
    for (k, name) in headers.iter().skip(1).enumerate() {
        if name != format!("x{k}") {
            return Err(Error::BadTable(format!(
                "coordinate column {} must be named x{k}",
                k + 1
            )));
        }
    }
    let mut grid = Vec::new();
    let mut positions = Vec::new();
    for record in reader.records() {
        let record = record?;
        if record.len() != dim + 1 {
            return Err(Error::BadTable(format!(
                "row has {} fields, expected {}",
                record.len(),
                dim + 1
            )));
        }
        let mut row = Vec::with_capacity(dim + 1);
        for field in record.iter() {
            let v: f64 = field
                .trim()
                .parse()
                .map_err(|_| Error::BadTable(format!("bad number {field:?}")))?;
            row.push(v);
        }
        grid.push(row[0]);
        positions.push(VecD::new(row[1..].to_vec()));
    }
    if grid.len() < 2 {
        return Err(Error::GridTooCoarse { needed: 2, got: grid.len() });
    }
    Ok(CurveTable { grid, positions })
}
