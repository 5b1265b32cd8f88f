//! CSV and JSON emission for result tables.

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::Result;

/// Serializes `rows` as CSV with a header row.
pub fn to_csv<R: Serialize>(rows: &[R]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn write_csv<R: Serialize>(rows: &[R], path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, to_csv(rows)?)?;
    Ok(())
}

/// Pretty JSON with a trailing newline.
pub fn to_json<V: Serialize + ?Sized>(value: &V) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<V: Serialize + ?Sized>(value: &V, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, to_json(value)?)?;
    Ok(())
}

/// Writes an `(x, y)` series as two-column CSV.
pub fn write_series(path: impl AsRef<Path>, x_name: &str, y_name: &str, points: &[(f64, f64)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([x_name, y_name])?;
    for (x, y) in points {
        w.write_record([x.to_string(), y.to_string()])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    fs::write(path, bytes)?;
    Ok(())
}
