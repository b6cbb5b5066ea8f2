//! Digit recognition from coefficient vectors: features, one-vs-one linear SVMs,
//! and the repeated random-split evaluation protocol.

mod model_file;
mod protocol;
mod svm;

use std::collections::BTreeMap;

use serde::Serialize;

pub use model_file::{load_model, parse_model, render_model, save_model, MODEL_FORMAT_VERSION};
pub use protocol::{
    evaluate_protocol, labels_of, split_indices, thread_limit, EvalOptions, EvalReport, EvalRow,
};
pub use svm::{train_binary, train_binary_stream, LinearSvm, MAX_EPOCHS, TOLERANCE};

use crate::approx::project;
use crate::bases::{BasisKind, OrthoBasis};
use crate::error::{Error, Result};
use crate::ink::{arc_length_parameterize, normalize_symbol, resample_uniform, InkSymbol};

/// Default soft-margin penalty.
pub const DEFAULT_C: f64 = 10.0;

/// Samples per symbol before projection.
pub const DEFAULT_POINTS: usize = 8;

/// How features were produced. Models only accept features with identical settings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FeatureMeta {
    pub kind: BasisKind,
    pub degree: usize,
    pub mu: f64,
    /// Resampling count; `0` projects the curve without resampling.
    pub points: usize,
    pub keep_constant: bool,
}

impl FeatureMeta {
    pub fn len(&self) -> usize {
        if self.keep_constant {
            2 * (self.degree + 1)
        } else {
            2 * self.degree
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FeatureOptions {
    pub points: usize,
    /// Keep the degree-0 coefficients (loses translation invariance).
    pub keep_constant: bool,
}

impl Default for FeatureOptions {
    fn default() -> Self {
        FeatureOptions {
            points: DEFAULT_POINTS,
            keep_constant: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FeatureVector {
    pub values: Vec<f64>,
    pub meta: FeatureMeta,
}

/// normalize → arc length → resample → project → drop degree 0 → unit norm.
pub fn extract_features(
    symbol: &InkSymbol<f64>,
    basis: &OrthoBasis<f64>,
    opts: FeatureOptions,
) -> Result<FeatureVector> {
    let mut curve = arc_length_parameterize(&normalize_symbol(symbol)?)?;
    if opts.points > 0 {
        curve = resample_uniform(&curve, opts.points)?;
    }
    let cv = project(&curve, basis)?;
    let skip = usize::from(!opts.keep_constant);
    let mut values: Vec<f64> = cv.xs[skip..]
        .iter()
        .chain(&cv.ys[skip..])
        .copied()
        .collect();
    let norm = values.iter().map(|v| v * v).sum::<f64>().sqrt();
    if !(norm > 0.0) {
        return Err(Error::DegenerateInk(
            "all feature coefficients vanish".into(),
        ));
    }
    values.iter_mut().for_each(|v| *v /= norm);
    Ok(FeatureVector {
        values,
        meta: FeatureMeta {
            kind: basis.kind(),
            degree: basis.degree(),
            mu: basis.mu(),
            points: opts.points,
            keep_constant: opts.keep_constant,
        },
    })
}

/// A linear SVM separating `class_pair.0` (positive decision) from `class_pair.1`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinarySvm {
    pub class_pair: (u8, u8),
    pub svm: LinearSvm,
}

impl BinarySvm {
    /// Winning label and the decision value. Zero goes to the first label.
    pub fn vote(&self, x: &[f64]) -> (u8, f64) {
        let d = self.svm.decision(x);
        (
            if d >= 0.0 {
                self.class_pair.0
            } else {
                self.class_pair.1
            },
            d,
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelMeta {
    pub features: FeatureMeta,
    pub c_param: f64,
    pub seed: u64,
    pub classes: Vec<u8>,
}

/// One binary classifier per unordered class pair, in lexicographic pair order.
#[derive(Clone, Debug, PartialEq)]
pub struct OvoModel {
    pub classifiers: Vec<BinarySvm>,
    pub meta: ModelMeta,
}

/// Trains one SVM per pair of `classes` on the samples carrying those labels.
///
/// Samples whose label is not in `classes` are ignored. Pair `k` uses stream `k`
/// of the seeded generator.
pub fn train_ovo(
    features: &[FeatureVector],
    labels: &[u8],
    classes: &[u8],
    c_param: f64,
    seed: u64,
) -> Result<OvoModel> {
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
    let meta = features[0].meta;
    if let Some(f) = features.iter().find(|f| f.meta != meta) {
        return Err(Error::MetaMismatch(format!("{:?} vs {:?}", f.meta, meta)));
    }
    let mut classes = classes.to_vec();
    classes.sort_unstable();
    classes.dedup();
    if classes.len() < 2 {
        return Err(Error::InvalidArgument("need at least two classes".into()));
    }
    let missing: Vec<u8> = classes
        .iter()
        .copied()
        .filter(|c| !labels.contains(c))
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingClass(missing));
    }

    let mut classifiers = Vec::with_capacity(classes.len() * (classes.len() - 1) / 2);
    let mut stream = 0u64;
    for (i, &a) in classes.iter().enumerate() {
        for &b in &classes[i + 1..] {
            let mut xs: Vec<&[f64]> = Vec::new();
            let mut ys: Vec<i8> = Vec::new();
            for (f, &l) in features.iter().zip(labels) {
                if l == a || l == b {
                    xs.push(&f.values);
                    ys.push(if l == a { 1 } else { -1 });
                }
            }
            let svm = train_binary_stream(&xs, &ys, c_param, seed, stream)?;
            classifiers.push(BinarySvm {
                class_pair: (a, b),
                svm,
            });
            stream += 1;
        }
    }
    Ok(OvoModel {
        classifiers,
        meta: ModelMeta {
            features: meta,
            c_param,
            seed,
            classes,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prediction {
    pub label: u8,
    /// Votes per class; every class of the model appears.
    pub votes: BTreeMap<u8, usize>,
    /// Sum of `|decision|` over the classifiers that voted for each class.
    pub margins: BTreeMap<u8, f64>,
}

/// Majority vote; ties go to the larger margin sum, then the smaller label.
pub fn predict(model: &OvoModel, feature: &FeatureVector) -> Result<Prediction> {
    if feature.meta != model.meta.features || feature.values.len() != feature.meta.len() {
        return Err(Error::MetaMismatch(format!(
            "feature {:?} for model {:?}",
            feature.meta, model.meta.features
        )));
    }
    let mut votes: BTreeMap<u8, usize> = model.meta.classes.iter().map(|&c| (c, 0)).collect();
    let mut margins: BTreeMap<u8, f64> = model.meta.classes.iter().map(|&c| (c, 0.0)).collect();
    for clf in &model.classifiers {
        let (label, d) = clf.vote(&feature.values);
        *votes.entry(label).or_default() += 1;
        *margins.entry(label).or_default() += d.abs();
    }
    let label = decide(&votes, &margins);
    Ok(Prediction {
        label,
        votes,
        margins,
    })
}

fn decide(votes: &BTreeMap<u8, usize>, margins: &BTreeMap<u8, f64>) -> u8 {
    let mut best: Option<(u8, usize, f64)> = None;
    // Ascending label order, so only a strictly better candidate replaces the current one.
    for (&label, &v) in votes {
        let m = margins.get(&label).copied().unwrap_or(0.0);
        let better = match best {
            None => true,
            Some((_, bv, bm)) => v > bv || (v == bv && m > bm),
        };
        if better {
            best = Some((label, v, m));
        }
    }
    best.map(|b| b.0).unwrap_or(0)
}
