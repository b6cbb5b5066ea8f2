//! CSV tables and SVG overlays of reconstructions.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::approx::{NormTable, TimingTable};
use crate::bases::BasisKind;
use crate::classify::EvalReport;
use crate::error::{Error, Result};
use crate::ink::ArcCurve;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i64),
    Real(f64),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Real(x) => format_g17(*x),
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

/// A rectangular table with a header row.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) -> Result<()> {
        if row.len() != self.header.len() {
            return Err(Error::InvalidArgument(format!(
                "row has {} cells, header has {}",
                row.len(),
                self.header.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }
}

/// `x` with 17 significant digits, like C's `%.17g`.
pub fn format_g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!(
            "{}e{sign}{:02}",
            trim_zeros(mantissa.to_string()),
            exp.abs()
        )
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// RFC 4180 text of `table` with `\n` line endings.
pub fn render_csv(table: &Table) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(&table.header).map_err(io)?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::render)).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidArgument(e.to_string()))
}

pub fn write_csv(table: &Table, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, render_csv(table)?)?;
    Ok(())
}

/// Columns `basis, degree, mean_coeff_norm, n_samples`.
pub fn norms_table(t: &NormTable<f64>) -> Table {
    let mut out = Table::new(["basis", "degree", "mean_coeff_norm", "n_samples"]);
    for r in &t.rows {
        out.rows.push(vec![
            r.kind.name().into(),
            r.degree.into(),
            r.mean_coeff_norm.into(),
            r.n_samples.into(),
        ]);
    }
    out
}

/// Columns `basis, degree, sample, coeff_norm`: one row per sample for re-aggregation.
pub fn per_sample_norms_table(t: &NormTable<f64>) -> Table {
    let mut out = Table::new(["basis", "degree", "sample", "coeff_norm"]);
    for r in &t.rows {
        for (i, &v) in r.per_sample.iter().enumerate() {
            out.rows.push(vec![
                r.kind.name().into(),
                r.degree.into(),
                i.into(),
                v.into(),
            ]);
        }
    }
    out
}

/// Columns `basis, degree, min, mean, max, n_splits`.
pub fn eval_table(r: &EvalReport) -> Table {
    let mut out = Table::new(["basis", "degree", "min", "mean", "max", "n_splits"]);
    for row in &r.rows {
        out.rows.push(vec![
            row.kind.name().into(),
            row.degree.into(),
            row.min.into(),
            row.mean.into(),
            row.max.into(),
            row.n_splits.into(),
        ]);
    }
    out
}

/// Columns `basis, degree, mean_seconds_per_sample, n_samples, repetitions`.
pub fn bench_table(t: &TimingTable) -> Table {
    let mut out = Table::new([
        "basis",
        "degree",
        "mean_seconds_per_sample",
        "n_samples",
        "repetitions",
    ]);
    for r in &t.rows {
        out.rows.push(vec![
            r.kind.name().into(),
            r.degree.into(),
            r.mean_seconds_per_sample.into(),
            r.n_samples.into(),
            r.repetitions.into(),
        ]);
    }
    out
}

/// Stroke color of each basis in overlays.
pub fn basis_color(kind: BasisKind) -> &'static str {
    match kind {
        BasisKind::Legendre => "#d62728",
        BasisKind::Chebyshev => "#1f77b4",
        BasisKind::LegendreSobolev => "#2ca02c",
        BasisKind::ChebyshevSobolev => "#ff7f0e",
    }
}

pub const ORIGINAL_COLOR: &str = "#000000";

const PLOT: f64 = 400.0;
const PAD: f64 = 20.0;
const LEGEND_ROW: f64 = 18.0;
const LEGEND_ROWS: usize = 4;

fn polyline_points(curve: &ArcCurve<f64>) -> String {
    let half = (PLOT - 2.0 * PAD) / 2.0;
    let mut s = String::new();
    for (i, (x, y)) in curve.points().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let px = PLOT / 2.0 + half * x;
        let py = PLOT / 2.0 - half * y;
        let _ = write!(s, "{px:.3},{py:.3}");
    }
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// SVG with the original as a solid black polyline and each reconstruction dotted.
///
/// The square `[-1, 1]²` fills the plot area with `y` pointing up. The legend
/// lists reconstructions in the given order.
pub fn render_svg_overlay(
    original: &ArcCurve<f64>,
    reconstructions: &[(BasisKind, ArcCurve<f64>)],
) -> String {
    let rows = reconstructions.len().max(LEGEND_ROWS);
    let height = PLOT + LEGEND_ROW * rows as f64 + PAD / 2.0;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{PLOT}" height="{height}" viewBox="0 0 {PLOT} {height}">"#
    );
    let _ = writeln!(
        out,
        r##"  <rect x="0" y="0" width="{PLOT}" height="{height}" fill="#ffffff"/>"##
    );
    let side = PLOT - 2.0 * PAD;
    let _ = writeln!(
        out,
        r##"  <rect class="frame" x="{PAD}" y="{PAD}" width="{side}" height="{side}" fill="none" stroke="#cccccc" stroke-width="1"/>"##
    );
    let _ = writeln!(
        out,
        r#"  <polyline class="original" points="{}" fill="none" stroke="{ORIGINAL_COLOR}" stroke-width="2" stroke-linejoin="round"/>"#,
        polyline_points(original)
    );
    for (kind, curve) in reconstructions {
        let _ = writeln!(
            out,
            r#"  <polyline class="reconstruction" data-basis="{}" points="{}" fill="none" stroke="{}" stroke-width="1.5" stroke-dasharray="2 3" stroke-linecap="round"/>"#,
            kind.name(),
            polyline_points(curve),
            basis_color(*kind)
        );
    }
    let _ = writeln!(
        out,
        r#"  <g id="legend" font-family="sans-serif" font-size="12">"#
    );
    for (i, (kind, _)) in reconstructions.iter().enumerate() {
        let y = PLOT + LEGEND_ROW * i as f64 + PAD / 2.0;
        let _ = writeln!(
            out,
            r#"    <line x1="{PAD}" y1="{y}" x2="{}" y2="{y}" stroke="{}" stroke-width="1.5" stroke-dasharray="2 3"/>"#,
            PAD + 30.0,
            basis_color(*kind)
        );
        let _ = writeln!(
            out,
            r#"    <text x="{}" y="{}">{}</text>"#,
            PAD + 38.0,
            y + 4.0,
            escape(kind.name())
        );
    }
    let _ = writeln!(out, "  </g>");
    out.push_str("</svg>\n");
    out
}

pub fn write_svg_overlay(
    original: &ArcCurve<f64>,
    reconstructions: &[(BasisKind, ArcCurve<f64>)],
    path: impl AsRef<Path>,
) -> Result<()> {
    fs::write(path, render_svg_overlay(original, reconstructions))?;
    Ok(())
}
