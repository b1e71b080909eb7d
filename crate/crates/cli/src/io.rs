//! File plumbing shared by the subcommands: atomic writes and the simple
//! CSV layouts (angle lists and covariate matrices).  Landmark files use the
//! reader and writer from the core crate.

use std::fs;
use std::path::Path;

use exmedian::error::{Error, Result};

/// Writes through a sibling temp file and renames, so a crash never leaves
/// a half-written output behind.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Serializes angles as a one-column CSV with an `angle` header.
pub fn angles_to_csv(angles: &[f64]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["angle"])?;
    for a in angles {
        w.write_record([format!("{a}")])?;
    }
    w.into_inner().map_err(|e| Error::Io(e.to_string()))
}

pub fn read_angles_csv(path: &Path) -> Result<Vec<f64>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| Error::Io(e.to_string()))?;
    let headers = r.headers()?.clone();
    if headers.len() != 1 || &headers[0] != "angle" {
        return Err(Error::InvalidInput(format!(
            "{}: expected a single `angle` column, found {:?}",
            path.display(),
            headers
        )));
    }
    let mut angles = Vec::new();
    for (i, record) in r.records().enumerate() {
        let record = record?;
        let field = &record[0];
        let value: f64 = field.parse().map_err(|_| {
            Error::InvalidInput(format!(
                "{} line {}: `{field}` is not a number",
                path.display(),
                i + 2
            ))
        })?;
        angles.push(value);
    }
    if angles.is_empty() {
        return Err(Error::InvalidInput(format!("{}: no angles", path.display())));
    }
    Ok(angles)
}

/// Serializes covariate rows with headers `x1..xp`.
pub fn covariates_to_csv(rows: &[Vec<f64>]) -> Result<Vec<u8>> {
    let p = rows.first().map_or(0, Vec::len);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record((1..=p).map(|j| format!("x{j}")))?;
    for row in rows {
        w.write_record(row.iter().map(|v| format!("{v}")))?;
    }
    w.into_inner().map_err(|e| Error::Io(e.to_string()))
}

/// Reads a covariate matrix: any headers, every field numeric, equal row
/// lengths (the CSV reader enforces the latter).
pub fn read_covariates_csv(path: &Path) -> Result<Vec<Vec<f64>>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| Error::Io(e.to_string()))?;
    let mut rows = Vec::new();
    for (i, record) in r.records().enumerate() {
        let record = record?;
        let mut row = Vec::with_capacity(record.len());
        for field in record.iter() {
            row.push(field.parse().map_err(|_| {
                Error::InvalidInput(format!(
                    "{} line {}: `{field}` is not a number",
                    path.display(),
                    i + 2
                ))
            })?);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::InvalidInput(format!("{}: no covariate rows", path.display())));
    }
    Ok(rows)
}
