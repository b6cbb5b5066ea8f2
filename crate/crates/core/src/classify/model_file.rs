//! Text format for trained one-vs-one models. See `docs/model-format.md`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{BinarySvm, FeatureMeta, LinearSvm, ModelMeta, OvoModel};
use crate::bases::BasisKind;
use crate::error::{Error, Result};

pub const MODEL_FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "inkbasis-ovo-model";

/// Serializes a model. Floats use the shortest text that parses back to the same value.
pub fn render_model(model: &OvoModel) -> String {
    let m = &model.meta;
    let f = &m.features;
    let mut out = String::new();
    let classes: Vec<String> = m.classes.iter().map(u8::to_string).collect();
    let _ = writeln!(out, "{MAGIC}");
    let _ = writeln!(out, "version {MODEL_FORMAT_VERSION}");
    let _ = writeln!(out, "basis {}", f.kind);
    let _ = writeln!(out, "degree {}", f.degree);
    let _ = writeln!(out, "mu {:?}", f.mu);
    let _ = writeln!(out, "points {}", f.points);
    let _ = writeln!(out, "keep_constant {}", f.keep_constant);
    let _ = writeln!(out, "c {:?}", m.c_param);
    let _ = writeln!(out, "seed {}", m.seed);
    let _ = writeln!(out, "classes {}", classes.join(" "));
    let _ = writeln!(out, "features {}", f.len());
    let _ = writeln!(out, "classifiers {}", model.classifiers.len());
    for clf in &model.classifiers {
        let s = &clf.svm;
        let _ = write!(
            out,
            "svm {} {} {} {} {:?}",
            clf.class_pair.0,
            clf.class_pair.1,
            s.epochs,
            u8::from(s.converged),
            s.bias
        );
        for w in &s.weights {
            let _ = write!(out, " {w:?}");
        }
        out.push('\n');
    }
    out.push_str("end\n");
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next_line(&mut self) -> Result<(usize, &'a str)> {
        for (i, l) in self.inner.by_ref() {
            let l = l.trim();
            if !l.is_empty() && !l.starts_with('#') {
                return Ok((i + 1, l));
            }
        }
        Err(Error::Parse {
            line: 0,
            reason: "unexpected end of model file".into(),
        })
    }

    fn field(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let (n, l) = self.next_line()?;
        match l.split_once(' ') {
            Some((k, v)) if k == key => Ok((n, v.trim())),
            _ if l == key => Ok((n, "")),
            _ => Err(Error::Parse {
                line: n,
                reason: format!("expected '{key}'"),
            }),
        }
    }
}

fn num<T: std::str::FromStr>(line: usize, s: &str, what: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Parse {
        line,
        reason: format!("invalid {what} '{s}'"),
    })
}

pub fn parse_model(text: &str) -> Result<OvoModel> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
    };
    let (n, magic) = lines.next_line()?;
    if magic != MAGIC {
        return Err(Error::Parse {
            line: n,
            reason: "not an inkbasis model file".into(),
        });
    }
    let (n, v) = lines.field("version")?;
    let version: u32 = num(n, v, "version")?;
    if version != MODEL_FORMAT_VERSION {
        return Err(Error::Parse {
            line: n,
            reason: format!("unsupported model version {version}"),
        });
    }
    let (n, v) = lines.field("basis")?;
    let kind: BasisKind = v.parse().map_err(|_| Error::Parse {
        line: n,
        reason: format!("unknown basis '{v}'"),
    })?;
    let (n, v) = lines.field("degree")?;
    let degree = num(n, v, "degree")?;
    let (n, v) = lines.field("mu")?;
    let mu = num(n, v, "mu")?;
    let (n, v) = lines.field("points")?;
    let points = num(n, v, "points")?;
    let (n, v) = lines.field("keep_constant")?;
    let keep_constant = num(n, v, "keep_constant flag")?;
    let (n, v) = lines.field("c")?;
    let c_param = num(n, v, "C")?;
    let (n, v) = lines.field("seed")?;
    let seed = num(n, v, "seed")?;
    let (n, v) = lines.field("classes")?;
    let classes = v
        .split_whitespace()
        .map(|c| num::<u8>(n, c, "class"))
        .collect::<Result<Vec<_>>>()?;
    let features = FeatureMeta {
        kind,
        degree,
        mu,
        points,
        keep_constant,
    };
    let (n, v) = lines.field("features")?;
    let dim: usize = num(n, v, "feature count")?;
    if dim != features.len() {
        return Err(Error::Parse {
            line: n,
            reason: format!("feature count {dim} does not match degree {degree}"),
        });
    }
    let (n, v) = lines.field("classifiers")?;
    let count: usize = num(n, v, "classifier count")?;

    let mut classifiers = Vec::with_capacity(count);
    for _ in 0..count {
        let (n, v) = lines.field("svm")?;
        let parts: Vec<&str> = v.split_whitespace().collect();
        if parts.len() != 5 + dim {
            return Err(Error::Parse {
                line: n,
                reason: format!("expected {} values, found {}", 5 + dim, parts.len()),
            });
        }
        let weights = parts[5..]
            .iter()
            .map(|w| num::<f64>(n, w, "weight"))
            .collect::<Result<Vec<_>>>()?;
        classifiers.push(BinarySvm {
            class_pair: (num(n, parts[0], "class")?, num(n, parts[1], "class")?),
            svm: LinearSvm {
                weights,
                bias: num(n, parts[4], "bias")?,
                c_param,
                epochs: num(n, parts[2], "epoch count")?,
                converged: num::<u8>(n, parts[3], "convergence flag")? != 0,
            },
        });
    }
    lines.field("end")?;
    Ok(OvoModel {
        classifiers,
        meta: ModelMeta {
            features,
            c_param,
            seed,
            classes,
        },
    })
}

pub fn save_model(model: &OvoModel, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, render_model(model))?;
    Ok(())
}

pub fn load_model(path: impl AsRef<Path>) -> Result<OvoModel> {
    parse_model(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model() -> OvoModel {
        let features = FeatureMeta {
            kind: BasisKind::ChebyshevSobolev,
            degree: 2,
            mu: 0.125,
            points: 8,
            keep_constant: false,
        };
        OvoModel {
            classifiers: vec![BinarySvm {
                class_pair: (3, 8),
                svm: LinearSvm {
                    weights: vec![0.1, -2.5e-17, 1.0 / 3.0, 7.0],
                    bias: -0.30000000000000004,
                    c_param: 1.0,
                    epochs: 17,
                    converged: true,
                },
            }],
            meta: ModelMeta {
                features,
                c_param: 1.0,
                seed: 42,
                classes: vec![3, 8],
            },
        }
    }

    #[test]
    fn round_trip_is_exact() {
        let m = model();
        let text = render_model(&m);
        assert!(text.starts_with("inkbasis-ovo-model\nversion 1\n"));
        assert_eq!(parse_model(&text).unwrap(), m);
    }

    #[test]
    fn truncated_and_wrong_version() {
        let text = render_model(&model());
        let cut: String = text.lines().take(12).collect::<Vec<_>>().join("\n");
        assert!(parse_model(&cut).is_err());
        let v2 = text.replace("version 1", "version 2");
        assert!(parse_model(&v2)
            .unwrap_err()
            .to_string()
            .contains("version 2"));
    }
}
