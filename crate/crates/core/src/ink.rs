//! Raw ink, arc-length parameterization and resampling.
//!
//! A symbol is an ordered list of strokes. Strokes are concatenated in order
//! and the pen-up gap between two strokes counts as a straight chord, so every
//! symbol becomes one parametric curve `(x(s), y(s))` with `s` running over
//! `[-1, 1]` proportionally to the distance traveled.

use crate::error::{Error, Result};
use crate::scalar::{clamp_unit, Real};

/// A single pen sample. The time stamp is carried along but never used by the math.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InkPoint<T = f64> {
    pub x: T,
    pub y: T,
    pub t: Option<T>,
}

impl<T: Real> InkPoint<T> {
    pub fn new(x: T, y: T) -> Self {
        InkPoint { x, y, t: None }
    }

    pub fn with_time(x: T, y: T, t: T) -> Self {
        InkPoint { x, y, t: Some(t) }
    }

    #[inline]
    fn same_position(&self, other: &Self) -> bool {
        self.x == other.x && self.y == other.y
    }
}

/// Ordered samples of one pen-down movement. Consecutive duplicates are dropped on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Stroke<T = f64> {
    points: Vec<InkPoint<T>>,
}

impl<T: Real> Stroke<T> {
    pub fn new(points: Vec<InkPoint<T>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::DegenerateInk("stroke has no points".into()));
        }
        if let Some(p) = points.iter().find(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(Error::DegenerateInk(format!(
                "non-finite coordinate ({}, {})",
                p.x, p.y
            )));
        }
        let mut deduped: Vec<InkPoint<T>> = Vec::with_capacity(points.len());
        for p in points {
            if deduped.last().is_none_or(|q| !q.same_position(&p)) {
                deduped.push(p);
            }
        }
        Ok(Stroke { points: deduped })
    }

    pub fn from_xy(coords: &[(T, T)]) -> Result<Self> {
        Self::new(coords.iter().map(|&(x, y)| InkPoint::new(x, y)).collect())
    }

    pub fn points(&self) -> &[InkPoint<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// A handwritten symbol: one or more strokes and an optional class tag.
#[derive(Clone, Debug, PartialEq)]
pub struct InkSymbol<T = f64> {
    strokes: Vec<Stroke<T>>,
    pub label: Option<String>,
}

impl<T: Real> InkSymbol<T> {
    pub fn new(strokes: Vec<Stroke<T>>, label: Option<String>) -> Result<Self> {
        if strokes.is_empty() {
            return Err(Error::DegenerateInk(
                "symbol must contain at least one stroke".into(),
            ));
        }
        let total: usize = strokes.iter().map(Stroke::len).sum();
        if total < 2 {
            return Err(Error::DegenerateInk(
                "symbol needs at least two distinct points".into(),
            ));
        }
        Ok(InkSymbol { strokes, label })
    }

    /// Convenience constructor for a single-stroke symbol.
    pub fn single_stroke(coords: &[(T, T)], label: Option<String>) -> Result<Self> {
        Self::new(vec![Stroke::from_xy(coords)?], label)
    }

    pub fn strokes(&self) -> &[Stroke<T>] {
        &self.strokes
    }

    /// The label interpreted as a digit class, if it is one.
    pub fn class(&self) -> Option<u8> {
        self.label
            .as_deref()
            .and_then(|l| l.trim().parse::<u8>().ok())
    }

    /// All samples in traversal order.
    pub fn points(&self) -> impl Iterator<Item = &InkPoint<T>> + '_ {
        self.strokes.iter().flat_map(|s| s.points.iter())
    }

    /// Returns `(min_x, min_y, max_x, max_y)`.
    pub fn bounding_box(&self) -> (T, T, T, T) {
        let inf = T::infinity();
        self.points()
            .fold((inf, inf, -inf, -inf), |(a, b, c, d), p| {
                (a.min(p.x), b.min(p.y), c.max(p.x), d.max(p.y))
            })
    }

    /// Applies `f` to every sample position, keeping time stamps and stroke structure.
    pub fn map_positions(&self, f: impl Fn(T, T) -> (T, T)) -> Result<Self> {
        let strokes = self
            .strokes
            .iter()
            .map(|s| {
                Stroke::new(
                    s.points
                        .iter()
                        .map(|p| {
                            let (x, y) = f(p.x, p.y);
                            InkPoint { x, y, t: p.t }
                        })
                        .collect(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(InkSymbol {
            strokes,
            label: self.label.clone(),
        })
    }
}

/// Piecewise-linear plane curve over the normalized arc parameter `s ∈ [-1, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ArcCurve<T = f64> {
    s: Vec<T>,
    x: Vec<T>,
    y: Vec<T>,
}

impl<T: Real> ArcCurve<T> {
    /// Validates and wraps node data. Nodes must strictly increase from -1 to 1.
    pub fn new(s: Vec<T>, x: Vec<T>, y: Vec<T>) -> Result<Self> {
        if s.len() < 2 || s.len() != x.len() || s.len() != y.len() {
            return Err(Error::DegenerateInk(format!(
                "curve needs at least two aligned nodes (s: {}, x: {}, y: {})",
                s.len(),
                x.len(),
                y.len()
            )));
        }
        if s[0] != -T::one() || s[s.len() - 1] != T::one() {
            return Err(Error::DegenerateInk("curve must span [-1, 1]".into()));
        }
        if s.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::DegenerateInk(
                "curve parameter must strictly increase".into(),
            ));
        }
        if x.iter().chain(y.iter()).any(|v| !v.is_finite()) {
            return Err(Error::DegenerateInk("non-finite curve value".into()));
        }
        Ok(ArcCurve { s, x, y })
    }

    pub fn s_nodes(&self) -> &[T] {
        &self.s
    }

    pub fn x_vals(&self) -> &[T] {
        &self.x
    }

    pub fn y_vals(&self) -> &[T] {
        &self.y
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn segment_count(&self) -> usize {
        self.s.len() - 1
    }

    /// Index `i` of the segment `[s_i, s_{i+1}]` containing `s` (already clamped).
    fn segment_of(&self, s: T) -> usize {
        let upper = self.s.partition_point(|&v| v <= s);
        upper.saturating_sub(1).min(self.s.len() - 2)
    }

    /// Linear interpolation on segment `i`.
    #[inline]
    pub(crate) fn eval_on_segment(&self, i: usize, s: T) -> (T, T) {
        let (s0, s1) = (self.s[i], self.s[i + 1]);
        let t = (s - s0) / (s1 - s0);
        let u = T::one() - t;
        (
            self.x[i] * u + self.x[i + 1] * t,
            self.y[i] * u + self.y[i + 1] * t,
        )
    }

    /// Constant velocity `(dx/ds, dy/ds)` on segment `i`.
    #[inline]
    pub(crate) fn slope_of_segment(&self, i: usize) -> (T, T) {
        let ds = self.s[i + 1] - self.s[i];
        (
            (self.x[i + 1] - self.x[i]) / ds,
            (self.y[i + 1] - self.y[i]) / ds,
        )
    }

    /// Evaluates the curve at `s`; exact at nodes.
    pub fn eval(&self, s: T) -> Result<(T, T)> {
        let s = clamp_unit(s).ok_or_else(|| Error::out_of_domain(s))?;
        Ok(self.eval_on_segment(self.segment_of(s), s))
    }

    /// Euclidean length of the polyline through the nodes.
    pub fn polyline_length(&self) -> T {
        (0..self.segment_count())
            .map(|i| (self.x[i + 1] - self.x[i]).hypot(self.y[i + 1] - self.y[i]))
            .sum()
    }

    /// Node positions as `(x, y)` pairs.
    pub fn points(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.x.iter().copied().zip(self.y.iter().copied())
    }
}

/// Parameterizes a symbol by normalized cumulative chord length.
///
/// Strokes are concatenated in order; pen-up gaps contribute their straight
/// chord. Samples that would not advance the parameter are dropped.
pub fn arc_length_parameterize<T: Real>(symbol: &InkSymbol<T>) -> Result<ArcCurve<T>> {
    let mut xs: Vec<T> = Vec::new();
    let mut ys: Vec<T> = Vec::new();
    let mut cum: Vec<T> = Vec::new();
    let mut total = T::zero();
    for p in symbol.points() {
        if let (Some(&px), Some(&py)) = (xs.last(), ys.last()) {
            if px == p.x && py == p.y {
                continue;
            }
            total = total + (p.x - px).hypot(p.y - py);
        }
        xs.push(p.x);
        ys.push(p.y);
        cum.push(total);
    }
    if xs.len() < 2 || !(total > T::zero()) || !total.is_finite() {
        return Err(Error::DegenerateInk("total arc length is zero".into()));
    }

    let two = T::lit(2.0);
    let last = xs.len() - 1;
    let mut s = Vec::with_capacity(xs.len());
    let mut x = Vec::with_capacity(xs.len());
    let mut y = Vec::with_capacity(xs.len());
    for i in 0..=last {
        let si = if i == 0 {
            -T::one()
        } else if i == last {
            T::one()
        } else {
            (two * cum[i] - total) / total
        };
        if i == last {
            // A vanishing final chord would collide with the previous node.
            while s.len() > 1 && *s.last().unwrap() >= si {
                s.pop();
                x.pop();
                y.pop();
            }
        } else if s.last().is_some_and(|&prev| si <= prev) {
            continue;
        }
        s.push(si);
        x.push(xs[i]);
        y.push(ys[i]);
    }
    ArcCurve::new(s, x, y)
}

/// Resamples a curve at `n_points` uniformly spaced parameter values.
pub fn resample_uniform<T: Real>(curve: &ArcCurve<T>, n_points: usize) -> Result<ArcCurve<T>> {
    if n_points < 2 {
        return Err(Error::InvalidArgument(format!(
            "resampling needs at least 2 points, got {n_points}"
        )));
    }
    let denom = T::of_usize(n_points - 1);
    let two = T::lit(2.0);
    let mut s = Vec::with_capacity(n_points);
    let mut x = Vec::with_capacity(n_points);
    let mut y = Vec::with_capacity(n_points);
    for k in 0..n_points {
        let sk = if k == n_points - 1 {
            T::one()
        } else {
            -T::one() + two * T::of_usize(k) / denom
        };
        let (xk, yk) = curve.eval(sk)?;
        s.push(sk);
        x.push(xk);
        y.push(yk);
    }
    ArcCurve::new(s, x, y)
}

/// Centers the bounding box at the origin and scales isotropically so the larger side is 2.
pub fn normalize_symbol<T: Real>(symbol: &InkSymbol<T>) -> Result<InkSymbol<T>> {
    let (x0, y0, x1, y1) = symbol.bounding_box();
    let side = (x1 - x0).max(y1 - y0);
    if !(side > T::zero()) {
        return Err(Error::DegenerateInk("bounding box has zero extent".into()));
    }
    let two = T::lit(2.0);
    let (cx, cy) = ((x0 + x1) / two, (y0 + y1) / two);
    let scale = two / side;
    symbol.map_positions(|x, y| ((x - cx) * scale, (y - cy) * scale))
}

/// Free-function form of [`ArcCurve::eval`].
pub fn eval_curve<T: Real>(curve: &ArcCurve<T>, s: T) -> Result<(T, T)> {
    curve.eval(s)
}
