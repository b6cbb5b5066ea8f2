//! Dataset and interchange formats: UCI pendigits text and ink JSON.
//!
//! Ink JSON:
//!
//! ```json
//! {"source": "optional text",
//!  "symbols": [{"label": "7", "strokes": [[[x, y], [x, y, t], ...], ...]}]}
//! ```

use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::ink::{InkPoint, InkSymbol, Stroke};

/// Coordinates per pendigits record.
pub const PENDIGITS_POINTS: usize = 8;

/// One pendigits line: 8 points on a `[0, 100]` grid and a digit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PendigitsRecord {
    pub points: [(u8, u8); PENDIGITS_POINTS],
    pub label: u8,
}

impl PendigitsRecord {
    /// Parses one comma-separated line of 16 coordinates followed by the class.
    pub fn parse(line: &str) -> std::result::Result<Self, String> {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 2 * PENDIGITS_POINTS + 1 {
            return Err(format!(
                "expected {} fields, found {}",
                2 * PENDIGITS_POINTS + 1,
                fields.len()
            ));
        }
        let mut vals = [0u8; 2 * PENDIGITS_POINTS + 1];
        for (i, f) in fields.iter().enumerate() {
            let v: u8 = f.parse().map_err(|_| {
                format!("field {} is not a small non-negative integer: '{f}'", i + 1)
            })?;
            vals[i] = v;
        }
        let mut points = [(0u8, 0u8); PENDIGITS_POINTS];
        for (k, p) in points.iter_mut().enumerate() {
            *p = (vals[2 * k], vals[2 * k + 1]);
            if p.0 > 100 || p.1 > 100 {
                return Err(format!(
                    "point {} = ({}, {}) outside [0, 100]",
                    k + 1,
                    p.0,
                    p.1
                ));
            }
        }
        let label = vals[2 * PENDIGITS_POINTS];
        if label > 9 {
            return Err(format!("class {label} outside 0..=9"));
        }
        Ok(PendigitsRecord { points, label })
    }

    pub fn to_symbol(&self) -> Result<InkSymbol<f64>> {
        let coords: Vec<(f64, f64)> = self
            .points
            .iter()
            .map(|&(x, y)| (f64::from(x), f64::from(y)))
            .collect();
        InkSymbol::single_stroke(&coords, Some(self.label.to_string()))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ParseMode {
    /// The first malformed line aborts parsing.
    #[default]
    Strict,
    /// Malformed lines are collected and skipped.
    Lenient,
}

/// Symbols read from a pendigits file, plus lines skipped in lenient mode.
#[derive(Clone, Debug, Default)]
pub struct PendigitsFile {
    pub symbols: Vec<InkSymbol<f64>>,
    pub skipped: Vec<(usize, String)>,
}

/// Parses pendigits text. Blank lines are ignored; line numbers start at 1.
pub fn parse_pendigits_str(text: &str, mode: ParseMode) -> Result<PendigitsFile> {
    let mut out = PendigitsFile::default();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let parsed =
            PendigitsRecord::parse(line).and_then(|r| r.to_symbol().map_err(|e| e.to_string()));
        match (parsed, mode) {
            (Ok(sym), _) => out.symbols.push(sym),
            (Err(reason), ParseMode::Strict) => {
                return Err(Error::Parse {
                    line: i + 1,
                    reason,
                })
            }
            (Err(reason), ParseMode::Lenient) => out.skipped.push((i + 1, reason)),
        }
    }
    Ok(out)
}

pub fn parse_pendigits(path: impl AsRef<Path>, mode: ParseMode) -> Result<PendigitsFile> {
    parse_pendigits_str(&fs::read_to_string(path)?, mode)
}

/// The first `n` symbols of each class, in file order.
///
/// Unlabeled symbols are dropped.
pub fn first_per_class(symbols: &[InkSymbol<f64>], n: usize) -> Vec<InkSymbol<f64>> {
    let mut seen = std::collections::HashMap::new();
    symbols
        .iter()
        .filter(|s| {
            s.class().is_some_and(|c| {
                let k = seen.entry(c).or_insert(0usize);
                *k += 1;
                *k <= n
            })
        })
        .cloned()
        .collect()
}

/// A set of symbols with free-text provenance.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct InkDocument {
    pub source: Option<String>,
    pub symbols: Vec<InkSymbol<f64>>,
}

fn number(v: &Value, path: &str) -> Result<f64> {
    let x = v
        .as_f64()
        .ok_or_else(|| Error::schema(path, "expected a number"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::schema(path, "coordinate must be finite"))
    }
}

fn point_from_json(v: &Value, path: &str) -> Result<InkPoint<f64>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::schema(path, "point must be an array [x, y] or [x, y, t]"))?;
    match arr.as_slice() {
        [x, y] => Ok(InkPoint::new(
            number(x, &format!("{path}[0]"))?,
            number(y, &format!("{path}[1]"))?,
        )),
        [x, y, t] => Ok(InkPoint::with_time(
            number(x, &format!("{path}[0]"))?,
            number(y, &format!("{path}[1]"))?,
            number(t, &format!("{path}[2]"))?,
        )),
        _ => Err(Error::schema(path, "point must have 2 or 3 entries")),
    }
}

/// Reads one symbol object; `path` prefixes error locations.
pub fn symbol_from_json(v: &Value, path: &str) -> Result<InkSymbol<f64>> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::schema(path, "symbol must be an object"))?;
    let label = match obj.get("label") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(Value::Number(n)) => Some(n.to_string()),
        Some(_) => {
            return Err(Error::schema(
                format!("{path}.label"),
                "label must be a string",
            ))
        }
    };
    let spath = format!("{path}.strokes");
    let strokes = obj
        .get("strokes")
        .ok_or_else(|| Error::schema(&spath, "symbol must have a strokes array"))?
        .as_array()
        .ok_or_else(|| Error::schema(&spath, "strokes must be an array"))?;
    if strokes.is_empty() {
        return Err(Error::schema(
            &spath,
            "symbol must contain at least one stroke",
        ));
    }
    let mut out = Vec::with_capacity(strokes.len());
    for (j, st) in strokes.iter().enumerate() {
        let p = format!("{spath}[{j}]");
        let pts = st
            .as_array()
            .ok_or_else(|| Error::schema(&p, "stroke must be an array of points"))?;
        if pts.is_empty() {
            return Err(Error::schema(&p, "stroke must contain at least one point"));
        }
        let points = pts
            .iter()
            .enumerate()
            .map(|(k, q)| point_from_json(q, &format!("{p}[{k}]")))
            .collect::<Result<Vec<_>>>()?;
        out.push(Stroke::new(points).map_err(|e| Error::schema(&p, e.to_string()))?);
    }
    InkSymbol::new(out, label).map_err(|e| match e {
        Error::DegenerateInk(_) => e,
        other => Error::schema(path, other.to_string()),
    })
}

pub fn symbol_to_json(symbol: &InkSymbol<f64>) -> Value {
    let strokes: Vec<Value> = symbol
        .strokes()
        .iter()
        .map(|s| {
            Value::Array(
                s.points()
                    .iter()
                    .map(|p| match p.t {
                        Some(t) => json!([p.x, p.y, t]),
                        None => json!([p.x, p.y]),
                    })
                    .collect(),
            )
        })
        .collect();
    let mut m = Map::new();
    if let Some(l) = &symbol.label {
        m.insert("label".into(), Value::String(l.clone()));
    }
    m.insert("strokes".into(), Value::Array(strokes));
    Value::Object(m)
}

pub fn document_from_json(v: &Value) -> Result<InkDocument> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::schema("$", "document must be an object"))?;
    let source = match obj.get("source") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(Error::schema("$.source", "source must be a string")),
    };
    let symbols = obj
        .get("symbols")
        .ok_or_else(|| Error::schema("$.symbols", "document must have a symbols array"))?
        .as_array()
        .ok_or_else(|| Error::schema("$.symbols", "symbols must be an array"))?;
    if symbols.is_empty() {
        return Err(Error::schema(
            "$.symbols",
            "document must contain at least one symbol",
        ));
    }
    let symbols = symbols
        .iter()
        .enumerate()
        .map(|(i, s)| symbol_from_json(s, &format!("$.symbols[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(InkDocument { source, symbols })
}

pub fn document_to_json(doc: &InkDocument) -> Value {
    let mut m = Map::new();
    if let Some(s) = &doc.source {
        m.insert("source".into(), Value::String(s.clone()));
    }
    m.insert(
        "symbols".into(),
        Value::Array(doc.symbols.iter().map(symbol_to_json).collect()),
    );
    Value::Object(m)
}

pub fn parse_ink_json(text: &str) -> Result<InkDocument> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Error::schema("$", format!("invalid JSON: {e}")))?;
    document_from_json(&v)
}

pub fn read_ink_json(path: impl AsRef<Path>) -> Result<InkDocument> {
    parse_ink_json(&fs::read_to_string(path)?)
}

/// Writes pretty-printed JSON. Numbers use the shortest form that reads back to the same value.
pub fn write_ink_json(doc: &InkDocument, path: impl AsRef<Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(&document_to_json(doc))
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}
