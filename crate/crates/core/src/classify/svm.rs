//! Soft-margin linear SVM trained by dual coordinate descent on the hinge loss.
//!
//! The bias is learned as the weight of a constant feature `1`, so it is
//! regularized together with the other weights.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub const MAX_EPOCHS: usize = 1000;
pub const TOLERANCE: f64 = 1e-6;

/// Weights and bias of a trained linear separator.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSvm {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub c_param: f64,
    /// Epochs actually run.
    pub epochs: usize,
    pub converged: bool,
}

impl LinearSvm {
    #[inline]
    pub fn decision(&self, x: &[f64]) -> f64 {
        self.weights.iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + self.bias
    }
}

/// Trains on `features` with labels `+1`/`-1` (any positive / non-positive value).
///
/// Coordinates are visited in a fresh permutation each epoch drawn from a
/// ChaCha8 stream seeded with `seed` and selected by `stream`; the result is
/// reproducible bit for bit.
pub fn train_binary_stream<F: AsRef<[f64]>>(
    features: &[F],
    labels: &[i8],
    c_param: f64,
    seed: u64,
    stream: u64,
) -> Result<LinearSvm> {
    if features.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if features.len() != labels.len() {
        return Err(Error::InvalidArgument(format!(
            "{} feature vectors but {} labels",
            features.len(),
            labels.len()
        )));
    }
    if !(c_param > 0.0 && c_param.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "C must be positive, got {c_param}"
        )));
    }
    let dim = features[0].as_ref().len();
    if features.iter().any(|f| f.as_ref().len() != dim) {
        return Err(Error::InvalidArgument(
            "feature vectors differ in length".into(),
        ));
    }
    let y: Vec<f64> = labels
        .iter()
        .map(|&l| if l > 0 { 1.0 } else { -1.0 })
        .collect();
    if y.iter().all(|&v| v > 0.0) || y.iter().all(|&v| v < 0.0) {
        return Err(Error::SingleClassData);
    }

    let n = features.len();
    let q: Vec<f64> = features
        .iter()
        .map(|f| f.as_ref().iter().map(|v| v * v).sum::<f64>() + 1.0)
        .collect();
    let mut w = vec![0.0; dim];
    let mut b = 0.0;
    let mut alpha = vec![0.0; n];
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);

    let mut epochs = 0;
    let mut converged = false;
    while epochs < MAX_EPOCHS {
        epochs += 1;
        order.shuffle(&mut rng);
        let mut pg_max = f64::NEG_INFINITY;
        let mut pg_min = f64::INFINITY;
        for &i in &order {
            let x = features[i].as_ref();
            let dot: f64 = w.iter().zip(x).map(|(a, v)| a * v).sum::<f64>() + b;
            let g = y[i] * dot - 1.0;
            let pg = if alpha[i] == 0.0 {
                g.min(0.0)
            } else if alpha[i] == c_param {
                g.max(0.0)
            } else {
                g
            };
            pg_max = pg_max.max(pg);
            pg_min = pg_min.min(pg);
            if pg != 0.0 {
                let old = alpha[i];
                alpha[i] = (old - g / q[i]).clamp(0.0, c_param);
                let step = (alpha[i] - old) * y[i];
                if step != 0.0 {
                    w.iter_mut().zip(x).for_each(|(a, v)| *a += step * v);
                    b += step;
                }
            }
        }
        if pg_max - pg_min < TOLERANCE {
            converged = true;
            break;
        }
    }
    Ok(LinearSvm {
        weights: w,
        bias: b,
        c_param,
        epochs,
        converged,
    })
}

/// [`train_binary_stream`] on stream 0.
pub fn train_binary<F: AsRef<[f64]>>(
    features: &[F],
    labels: &[i8],
    c_param: f64,
    seed: u64,
) -> Result<LinearSvm> {
    train_binary_stream(features, labels, c_param, seed, 0)
}
