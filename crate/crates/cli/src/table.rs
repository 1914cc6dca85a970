//! Reading a numeric CSV into named columns.

use std::path::Path;

use anyhow::{bail, Context, Result};

/// Raw string cells by column, after the header.
pub struct RawTable {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl RawTable {
    pub fn read(path: &Path) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_path(path)
            .with_context(|| format!("opening {}", path.display()))?;
        let headers: Vec<String> = reader.headers()?.iter().map(|h| h.trim().to_string()).collect();
        let mut rows = vec![];
        for (i, rec) in reader.records().enumerate() {
            let rec = rec.with_context(|| format!("reading row {} of {}", i + 1, path.display()))?;
            rows.push(rec.iter().map(|c| c.trim().to_string()).collect());
        }
        Ok(RawTable { headers, rows })
    }

    /// Column position by header name, else by 1-based index.
    pub fn locate(&self, key: &str) -> Result<usize> {
        if let Some(i) = self.headers.iter().position(|h| h == key) {
            return Ok(i);
        }
        match key.parse::<usize>() {
            Ok(k) if k >= 1 && k <= self.headers.len() => Ok(k - 1),
            _ => bail!("no column `{key}` in input"),
        }
    }
}

pub fn is_missing(cell: &str) -> bool {
    matches!(cell, "" | "NA" | "na" | "N/A" | "NaN" | "nan" | "?" | "null")
}

pub fn parse_number(cell: &str) -> Option<f64> {
    cell.parse::<f64>().ok().filter(|v| v.is_finite())
}
