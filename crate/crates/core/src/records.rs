//! CSV encoding of evaluation points and field records.
//!
//! Floats are written with 17 significant digits so every `f64` survives a
//! write/read cycle unchanged.

use std::io::{Read, Write};

use thiserror::Error;

use crate::geometry::Containment;
use crate::linalg::Vec3;
use crate::mesh::FieldRecord;

pub const RECORD_HEADER: [&str; 12] = [
    "x",
    "y",
    "z",
    "Hx",
    "Hy",
    "Hz",
    "Bx",
    "By",
    "Bz",
    "Hnorm",
    "containment",
    "element",
];

pub const POINT_HEADER: [&str; 3] = ["x", "y", "z"];

#[derive(Debug, Error)]
pub enum CsvError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: expected header {expected:?}")]
    Header {
        line: u64,
        expected: Vec<&'static str>,
    },
    #[error("line {line}, column `{column}`: {message}")]
    Field {
        line: u64,
        column: &'static str,
        message: String,
    },
}

/// 17 significant digits, scientific notation.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_records<W: Write>(out: W, records: &[FieldRecord]) -> Result<(), CsvError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RECORD_HEADER)?;
    for rec in records {
        let mut row: Vec<String> = [rec.point, rec.h, rec.b]
            .iter()
            .flat_map(|v| v.to_array())
            .map(format_f64)
            .collect();
        row.push(format_f64(rec.h_norm));
        row.push(rec.containment.as_str().to_owned());
        row.push(rec.element.map(|e| e.to_string()).unwrap_or_default());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

fn line_of(rec: &csv::StringRecord) -> u64 {
    rec.position().map_or(0, |p| p.line())
}

fn check_header<R: Read>(
    reader: &mut csv::Reader<R>,
    expected: &[&'static str],
) -> Result<(), CsvError> {
    let header = reader.headers()?;
    if header.iter().map(str::trim).ne(expected.iter().copied()) {
        return Err(CsvError::Header {
            line: 1,
            expected: expected.to_vec(),
        });
    }
    Ok(())
}

fn parse_float(rec: &csv::StringRecord, idx: usize, column: &'static str) -> Result<f64, CsvError> {
    let raw = rec.get(idx).unwrap_or("").trim();
    raw.parse::<f64>().map_err(|e| CsvError::Field {
        line: line_of(rec),
        column,
        message: format!("`{raw}`: {e}"),
    })
}

fn parse_vec(rec: &csv::StringRecord, start: usize) -> Result<Vec3, CsvError> {
    Ok(Vec3::new(
        parse_float(rec, start, RECORD_HEADER[start])?,
        parse_float(rec, start + 1, RECORD_HEADER[start + 1])?,
        parse_float(rec, start + 2, RECORD_HEADER[start + 2])?,
    ))
}

pub fn read_records<R: Read>(input: R) -> Result<Vec<FieldRecord>, CsvError> {
    let mut reader = csv::Reader::from_reader(input);
    check_header(&mut reader, &RECORD_HEADER)?;
    let mut out = Vec::new();
    for rec in reader.records() {
        let rec = rec?;
        let containment: Containment =
            rec.get(10)
                .unwrap_or("")
                .trim()
                .parse()
                .map_err(|message| CsvError::Field {
                    line: line_of(&rec),
                    column: "containment",
                    message,
                })?;
        let raw_element = rec.get(11).unwrap_or("").trim();
        let element = if raw_element.is_empty() {
            None
        } else {
            Some(raw_element.parse::<usize>().map_err(|e| CsvError::Field {
                line: line_of(&rec),
                column: "element",
                message: e.to_string(),
            })?)
        };
        out.push(FieldRecord {
            point: parse_vec(&rec, 0)?,
            h: parse_vec(&rec, 3)?,
            b: parse_vec(&rec, 6)?,
            h_norm: parse_float(&rec, 9, "Hnorm")?,
            containment,
            element,
        });
    }
    Ok(out)
}

/// Reads an `x,y,z` point list.
pub fn read_points<R: Read>(input: R) -> Result<Vec<Vec3>, CsvError> {
    let mut reader = csv::Reader::from_reader(input);
    check_header(&mut reader, &POINT_HEADER)?;
    reader.records().map(|rec| parse_vec(&rec?, 0)).collect()
}

pub fn write_points<W: Write>(out: W, points: &[Vec3]) -> Result<(), CsvError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(POINT_HEADER)?;
    for p in points {
        w.write_record(p.to_array().map(format_f64))?;
    }
    w.flush()?;
    Ok(())
}
