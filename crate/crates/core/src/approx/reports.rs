//! Dataset-level coefficient-norm and projection-timing tables.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::project;
use crate::bases::{build_basis, BasisKind, OrthoBasis};
use crate::error::{Error, Result};
use crate::ink::{arc_length_parameterize, normalize_symbol, ArcCurve, InkSymbol};
use crate::scalar::Real;
use crate::MAX_DEGREE;

/// The curve every experiment projects: normalized, then arc-length parameterized.
pub fn symbol_curve<T: Real>(symbol: &InkSymbol<T>) -> Result<ArcCurve<T>> {
    arc_length_parameterize(&normalize_symbol(symbol)?)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormRow<T = f64> {
    pub kind: BasisKind,
    pub degree: usize,
    pub mean_coeff_norm: T,
    pub n_samples: usize,
    /// Coefficient norm of every sample, in dataset order.
    #[serde(skip)]
    pub per_sample: Vec<T>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormTable<T = f64> {
    pub mu: T,
    pub rows: Vec<NormRow<T>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TimingRow {
    pub kind: BasisKind,
    pub degree: usize,
    pub mean_seconds_per_sample: f64,
    pub n_samples: usize,
    pub repetitions: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TimingTable {
    pub mu: f64,
    pub rows: Vec<TimingRow>,
}

fn check_degrees(degrees: &[usize]) -> Result<()> {
    match degrees.iter().find(|&&d| d > MAX_DEGREE) {
        Some(d) => Err(Error::InvalidArgument(format!(
            "degree {d} outside [0, {MAX_DEGREE}]"
        ))),
        None => Ok(()),
    }
}

/// `(kind, degree)` pairs sorted by kind then degree, with their bases.
fn grid<T: Real>(kinds: &[BasisKind], degrees: &[usize], mu: T) -> Result<Vec<OrthoBasis<T>>> {
    check_degrees(degrees)?;
    let mut kinds = kinds.to_vec();
    kinds.sort();
    kinds.dedup();
    let mut degrees = degrees.to_vec();
    degrees.sort();
    degrees.dedup();
    let mut out = Vec::with_capacity(kinds.len() * degrees.len());
    for &k in &kinds {
        for &d in &degrees {
            out.push(build_basis(k, d, mu)?);
        }
    }
    Ok(out)
}

/// Mean Euclidean norm of the full `(xs, ys)` coefficient vector per basis and degree.
///
/// The mean sums sorted values, so the result does not depend on dataset order.
pub fn norm_report<T: Real>(
    dataset: &[InkSymbol<T>],
    kinds: &[BasisKind],
    degrees: &[usize],
    mu: T,
) -> Result<NormTable<T>> {
    if dataset.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let bases = grid(kinds, degrees, mu)?;
    let per_symbol: Vec<Vec<T>> = dataset
        .par_iter()
        .map(|sym| {
            let curve = symbol_curve(sym)?;
            bases
                .iter()
                .map(|b| project(&curve, b).map(|cv| cv.norm()))
                .collect::<Result<Vec<T>>>()
        })
        .collect::<Result<_>>()?;

    let n = dataset.len();
    let rows = bases
        .iter()
        .enumerate()
        .map(|(j, b)| {
            let per_sample: Vec<T> = per_symbol.iter().map(|v| v[j]).collect();
            let mut sorted = per_sample.clone();
            sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
            let mean = sorted.into_iter().sum::<T>() / T::of_usize(n);
            NormRow {
                kind: b.kind(),
                degree: b.degree(),
                mean_coeff_norm: mean,
                n_samples: n,
                per_sample,
            }
        })
        .collect();
    Ok(NormTable { mu, rows })
}

/// Per-sample projection time for each basis and degree.
///
/// Curves are prepared up front; only projection is timed. Each configuration
/// gets one untimed warm-up pass, then `repetitions` timed passes over the
/// dataset; the reported value is the median of the per-pass means. Runs on
/// the calling thread.
pub fn timing_report<T: Real>(
    dataset: &[InkSymbol<T>],
    kinds: &[BasisKind],
    degrees: &[usize],
    mu: T,
    repetitions: usize,
) -> Result<TimingTable> {
    if dataset.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if repetitions == 0 {
        return Err(Error::InvalidArgument(
            "repetitions must be at least 1".into(),
        ));
    }
    let bases = grid(kinds, degrees, mu)?;
    let curves = dataset
        .iter()
        .map(symbol_curve)
        .collect::<Result<Vec<_>>>()?;
    let n = curves.len();

    let mut rows = Vec::with_capacity(bases.len());
    for b in &bases {
        for c in &curves {
            std::hint::black_box(project(c, b)?);
        }
        let mut means = Vec::with_capacity(repetitions);
        for _ in 0..repetitions {
            let start = Instant::now();
            for c in &curves {
                std::hint::black_box(project(std::hint::black_box(c), b)?);
            }
            means.push(start.elapsed().as_secs_f64() / n as f64);
        }
        means.sort_by(f64::total_cmp);
        let mid = means.len() / 2;
        let median = if means.len() % 2 == 1 {
            means[mid]
        } else {
            0.5 * (means[mid - 1] + means[mid])
        };
        rows.push(TimingRow {
            kind: b.kind(),
            degree: b.degree(),
            mean_seconds_per_sample: median,
            n_samples: n,
            repetitions,
        });
    }
    Ok(TimingTable {
        mu: mu.as_f64(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(shift: f64) -> InkSymbol<f64> {
        let pts = [(0.0, 0.0), (3.0, 1.0), (4.0, 4.0), (1.0, 5.0), (shift, 2.0)];
        InkSymbol::single_stroke(&pts, Some("0".into())).unwrap()
    }

    #[test]
    fn rows_are_sorted_and_complete() {
        let data = vec![sample(0.5), sample(-1.0)];
        let t = norm_report(
            &data,
            &[BasisKind::ChebyshevSobolev, BasisKind::Legendre],
            &[7, 3],
            0.125,
        )
        .unwrap();
        let keys: Vec<_> = t.rows.iter().map(|r| (r.kind, r.degree)).collect();
        assert_eq!(
            keys,
            vec![
                (BasisKind::Legendre, 3),
                (BasisKind::Legendre, 7),
                (BasisKind::ChebyshevSobolev, 3),
                (BasisKind::ChebyshevSobolev, 7)
            ]
        );
        assert!(t
            .rows
            .iter()
            .all(|r| r.n_samples == 2 && r.per_sample.len() == 2));
    }

    #[test]
    fn permutation_invariant() {
        let a = vec![sample(0.5), sample(-1.0), sample(2.0)];
        let b = vec![a[2].clone(), a[0].clone(), a[1].clone()];
        let ta = norm_report(&a, &BasisKind::ALL, &[5, 9], 0.125).unwrap();
        let tb = norm_report(&b, &BasisKind::ALL, &[5, 9], 0.125).unwrap();
        for (ra, rb) in ta.rows.iter().zip(&tb.rows) {
            assert_eq!(ra.mean_coeff_norm, rb.mean_coeff_norm);
        }
    }

    #[test]
    fn empty_and_out_of_range() {
        assert!(matches!(
            norm_report::<f64>(&[], &BasisKind::ALL, &[5], 0.125),
            Err(Error::EmptyDataset)
        ));
        assert!(norm_report(&[sample(0.0)], &BasisKind::ALL, &[21], 0.125).is_err());
        assert!(timing_report(&[sample(0.0)], &BasisKind::ALL, &[5], 0.125, 0).is_err());
    }

    #[test]
    fn timing_has_one_row_per_configuration() {
        let t = timing_report(&[sample(0.0)], &BasisKind::ALL, &[2, 4], 0.125, 3).unwrap();
        assert_eq!(t.rows.len(), 8);
        assert!(t
            .rows
            .iter()
            .all(|r| r.mean_seconds_per_sample >= 0.0 && r.repetitions == 3));
    }
}
