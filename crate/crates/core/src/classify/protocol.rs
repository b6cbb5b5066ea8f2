//! Repeated random train/test splits with max/min/mean accuracy.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{extract_features, predict, train_ovo, FeatureOptions, FeatureVector, DEFAULT_C};
use crate::bases::{build_basis, BasisKind};
use crate::error::{Error, Result};
use crate::ink::InkSymbol;

/// Environment variable capping worker threads.
pub const THREADS_ENV: &str = "INKBASIS_THREADS";

/// Parallelism cap from `INKBASIS_THREADS`, if set to a positive integer.
pub fn thread_limit() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalOptions {
    pub n_splits: usize,
    pub train_fraction: f64,
    pub base_seed: u64,
    pub c_param: f64,
    /// Split each class separately so every class lands on both sides.
    pub stratified: bool,
    pub features: FeatureOptions,
    pub classes: Vec<u8>,
    /// Worker threads; `None` uses [`thread_limit`] or the machine default.
    pub threads: Option<usize>,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            n_splits: 100,
            train_fraction: 0.8,
            base_seed: 0,
            c_param: DEFAULT_C,
            stratified: true,
            features: FeatureOptions::default(),
            classes: (0..10).collect(),
            threads: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvalRow {
    pub kind: BasisKind,
    pub degree: usize,
    pub min: f64,
    pub mean: f64,
    pub max: f64,
    pub n_splits: usize,
    pub train_fraction: f64,
    /// Test accuracy of split `i` at index `i`.
    #[serde(skip)]
    pub accuracies: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvalReport {
    pub mu: f64,
    pub base_seed: u64,
    pub rows: Vec<EvalRow>,
}

/// Digit class of every symbol.
pub fn labels_of(dataset: &[InkSymbol<f64>]) -> Result<Vec<u8>> {
    dataset
        .iter()
        .enumerate()
        .map(|(i, s)| {
            s.class()
                .ok_or_else(|| Error::InvalidArgument(format!("symbol {i} has no digit label")))
        })
        .collect()
}

fn train_count(n: usize, fraction: f64) -> usize {
    if n < 2 {
        return n;
    }
    ((fraction * n as f64).round() as usize).clamp(1, n - 1)
}

/// Train and test indices, each ascending, for one seeded split.
pub fn split_indices(
    labels: &[u8],
    train_fraction: f64,
    seed: u64,
    stratified: bool,
) -> (Vec<usize>, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train = Vec::new();
    let mut test = Vec::new();
    let mut take = |mut idx: Vec<usize>, rng: &mut ChaCha8Rng| {
        idx.shuffle(rng);
        let k = train_count(idx.len(), train_fraction);
        train.extend_from_slice(&idx[..k]);
        test.extend_from_slice(&idx[k..]);
    };
    if stratified {
        let mut classes: Vec<u8> = labels.to_vec();
        classes.sort_unstable();
        classes.dedup();
        for c in classes {
            let idx = (0..labels.len()).filter(|&i| labels[i] == c).collect();
            take(idx, &mut rng);
        }
    } else {
        take((0..labels.len()).collect(), &mut rng);
    }
    train.sort_unstable();
    test.sort_unstable();
    (train, test)
}

fn run_split(
    features: &[FeatureVector],
    labels: &[u8],
    opts: &EvalOptions,
    seed: u64,
) -> Result<f64> {
    let (train, test) = split_indices(labels, opts.train_fraction, seed, opts.stratified);
    if test.is_empty() {
        return Err(Error::InvalidArgument(
            "split leaves no test samples".into(),
        ));
    }
    let tf: Vec<FeatureVector> = train.iter().map(|&i| features[i].clone()).collect();
    let tl: Vec<u8> = train.iter().map(|&i| labels[i]).collect();
    let model = train_ovo(&tf, &tl, &opts.classes, opts.c_param, seed)?;
    let mut correct = 0usize;
    for &i in &test {
        if predict(&model, &features[i])?.label == labels[i] {
            correct += 1;
        }
    }
    Ok(correct as f64 / test.len() as f64)
}

/// Runs the split protocol for every basis and degree.
///
/// Split `i` uses seed `base_seed + i` for both the split and the training
/// order. Splits run in parallel; results are collected by index, so the
/// report does not depend on scheduling.
pub fn evaluate_protocol(
    dataset: &[InkSymbol<f64>],
    kinds: &[BasisKind],
    degrees: &[usize],
    mu: f64,
    opts: &EvalOptions,
) -> Result<EvalReport> {
    if dataset.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if opts.n_splits == 0 {
        return Err(Error::InvalidArgument("need at least one split".into()));
    }
    if !(opts.train_fraction > 0.0 && opts.train_fraction < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "train fraction {} outside (0, 1)",
            opts.train_fraction
        )));
    }
    let labels = labels_of(dataset)?;
    let missing: Vec<u8> = opts
        .classes
        .iter()
        .copied()
        .filter(|c| !labels.contains(c))
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingClass(missing));
    }
    // Restrict to the requested classes.
    let keep: Vec<usize> = (0..dataset.len())
        .filter(|&i| opts.classes.contains(&labels[i]))
        .collect();
    let labels: Vec<u8> = keep.iter().map(|&i| labels[i]).collect();

    let mut kinds = kinds.to_vec();
    kinds.sort();
    kinds.dedup();
    let mut degrees = degrees.to_vec();
    degrees.sort();
    degrees.dedup();

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = opts.threads.or_else(thread_limit) {
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;

    pool.install(|| {
        let mut rows = Vec::new();
        for &kind in &kinds {
            for &degree in &degrees {
                let basis = build_basis(kind, degree, mu)?;
                let features = keep
                    .par_iter()
                    .map(|&i| extract_features(&dataset[i], &basis, opts.features))
                    .collect::<Result<Vec<_>>>()?;
                let accuracies = (0..opts.n_splits)
                    .into_par_iter()
                    .map(|i| {
                        run_split(
                            &features,
                            &labels,
                            opts,
                            opts.base_seed.wrapping_add(i as u64),
                        )
                    })
                    .collect::<Result<Vec<f64>>>()?;
                let min = accuracies.iter().copied().fold(f64::INFINITY, f64::min);
                let max = accuracies.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let mean = accuracies.iter().sum::<f64>() / accuracies.len() as f64;
                rows.push(EvalRow {
                    kind,
                    degree,
                    min,
                    mean,
                    max,
                    n_splits: opts.n_splits,
                    train_fraction: opts.train_fraction,
                    accuracies,
                });
            }
        }
        Ok(EvalReport {
            mu,
            base_seed: opts.base_seed,
            rows,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stratified_split_keeps_every_class() {
        let labels: Vec<u8> = (0..50).map(|i| (i % 5) as u8).collect();
        let (train, test) = split_indices(&labels, 0.8, 11, true);
        assert_eq!(train.len() + test.len(), 50);
        for c in 0..5u8 {
            assert_eq!(train.iter().filter(|&&i| labels[i] == c).count(), 8);
            assert_eq!(test.iter().filter(|&&i| labels[i] == c).count(), 2);
        }
        assert_eq!(split_indices(&labels, 0.8, 11, true), (train, test));
    }

    #[test]
    fn two_samples_split_one_each() {
        let (train, test) = split_indices(&[4, 4], 0.9, 0, true);
        assert_eq!((train.len(), test.len()), (1, 1));
    }

    #[test]
    fn argument_checks() {
        let d =
            vec![InkSymbol::single_stroke(&[(0.0, 0.0), (1.0, 1.0)], Some("1".into())).unwrap()];
        let opts = EvalOptions::default();
        assert!(matches!(
            evaluate_protocol(&[], &BasisKind::ALL, &[5], 0.125, &opts),
            Err(Error::EmptyDataset)
        ));
        assert!(matches!(
            evaluate_protocol(&d, &BasisKind::ALL, &[5], 0.125, &opts),
            Err(Error::MissingClass(_))
        ));
        let bad = EvalOptions {
            train_fraction: 1.0,
            ..EvalOptions::default()
        };
        assert!(evaluate_protocol(&d, &BasisKind::ALL, &[5], 0.125, &bad).is_err());
    }
}
