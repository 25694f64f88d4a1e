//! Dataset formats.
//!
//! CSV: header `color,x0,x1,...,x{d-1}`, one point per row, coordinates as
//! exact decimals or `p/q`. JSON: `{"dim": d, "classes": [[["x", ...], ...], ...]}`
//! with coordinates as strings. Written coordinates are always `p/q`.

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{ColoredPointSet, Point};
use crate::rational::format_rational;

fn unreadable(e: impl std::fmt::Display) -> Error {
    Error::DatasetUnreadable(e.to_string())
}

pub fn parse_csv(text: &str) -> Result<ColoredPointSet> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let header = reader.headers().map_err(unreadable)?.clone();
    let dim = header.len().saturating_sub(1);
    let expected: Vec<String> = std::iter::once("color".to_string()).chain((0..dim).map(|k| format!("x{k}"))).collect();
    if dim == 0 || header.iter().ne(expected.iter().map(String::as_str)) {
        return Err(unreadable(format!("expected header {}", expected.join(","))));
    }
    let mut classes = vec![Vec::new(); dim + 1];
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(unreadable)?;
        let color: usize = record[0]
            .parse()
            .map_err(|_| unreadable(format!("row {}: bad color {:?}", line + 1, &record[0])))?;
        if color > dim {
            return Err(unreadable(format!("row {}: color {color} out of range 0..={dim}", line + 1)));
        }
        let coords: Vec<&str> = record.iter().skip(1).collect();
        classes[color].push(Point::parse(&coords).map_err(|e| unreadable(format!("row {}: {e}", line + 1)))?);
    }
    ColoredPointSet::new(dim, classes)
}

pub fn to_csv(cps: &ColoredPointSet) -> String {
    let mut out = String::from("color");
    for k in 0..cps.dim() {
        out.push_str(&format!(",x{k}"));
    }
    out.push('\n');
    for (color, class) in cps.classes().iter().enumerate() {
        for p in class {
            out.push_str(&color.to_string());
            for c in p.coords() {
                out.push(',');
                out.push_str(&format_rational(c));
            }
            out.push('\n');
        }
    }
    out
}

pub fn parse_json(text: &str) -> Result<ColoredPointSet> {
    serde_json::from_str(text).map_err(unreadable)
}

pub fn to_json(cps: &ColoredPointSet) -> String {
    serde_json::to_string_pretty(cps).expect("dataset serializes")
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

/// Reads a `.json` dataset, or CSV for any other extension.
pub fn read_dataset(path: &Path) -> Result<ColoredPointSet> {
    let text = fs::read_to_string(path).map_err(|e| unreadable(format!("{}: {e}", path.display())))?;
    if is_json(path) {
        parse_json(&text)
    } else {
        parse_csv(&text)
    }
}

pub fn write_dataset(path: &Path, cps: &ColoredPointSet) -> Result<()> {
    let text = if is_json(path) { to_json(cps) } else { to_csv(cps) };
    fs::write(path, text).map_err(|e| Error::ConfigInvalid(format!("cannot write {}: {e}", path.display())))
}

/// Tidy CSV (one row per measurement) for external plotting.
pub fn to_tidy_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::ConfigInvalid(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::ConfigInvalid(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
