//! Projection of curves onto a basis and everything measured from the result.

mod bounds;
mod error;
mod reports;

pub use bounds::{
    basis_vector_l2_norm, induced_sobolev_norm, l2_norms, sobolev_norm, theorem2_bound,
    BoundReport, SPECTRAL_TOL, SUP_NORM_GRID,
};
pub use error::{approx_error, approx_error_with_mu, projection_residual, ApproxError, LINF_GRID};
pub use reports::{
    norm_report, symbol_curve, timing_report, NormRow, NormTable, TimingRow, TimingTable,
};

use serde::Serialize;

use crate::bases::{
    clenshaw, eval_all, eval_all_with_derivatives, gauss_chebyshev_rule, gauss_rule, BasisKind,
    OrthoBasis, PolyInBasis, QuadratureRule, RefKind, Weight, QUADRATURE_MARGIN,
};
use crate::error::{Error, Result};
use crate::ink::ArcCurve;
use crate::scalar::Real;

/// The `d + 1` x- and y-coefficients of a curve in one basis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoeffVector<T = f64> {
    pub kind: BasisKind,
    pub degree: usize,
    pub mu: T,
    pub xs: Vec<T>,
    pub ys: Vec<T>,
}

impl<T: Real> CoeffVector<T> {
    pub fn zeros(basis: &OrthoBasis<T>) -> Self {
        CoeffVector {
            kind: basis.kind(),
            degree: basis.degree(),
            mu: basis.mu(),
            xs: vec![T::zero(); basis.len()],
            ys: vec![T::zero(); basis.len()],
        }
    }

    /// Fails unless the vector was produced for `basis`.
    pub fn check_basis(&self, basis: &OrthoBasis<T>) -> Result<()> {
        let ok = self.kind == basis.kind()
            && self.degree == basis.degree()
            && self.xs.len() == basis.len()
            && self.ys.len() == basis.len()
            && (!self.kind.is_sobolev() || self.mu == basis.mu());
        if ok {
            Ok(())
        } else {
            Err(Error::BasisMismatch(format!(
                "coefficients for {} d={} μ={} used with {} d={} μ={}",
                self.kind,
                self.degree,
                self.mu,
                basis.kind(),
                basis.degree(),
                basis.mu()
            )))
        }
    }

    /// Euclidean norm of the concatenated `(xs, ys)`.
    pub fn norm(&self) -> T {
        self.xs
            .iter()
            .chain(&self.ys)
            .map(|&v| v * v)
            .sum::<T>()
            .sqrt()
    }

    pub fn x_poly<'a>(&self, basis: &'a OrthoBasis<T>) -> Result<PolyInBasis<'a, T>> {
        self.check_basis(basis)?;
        basis.poly(self.xs.clone())
    }

    pub fn y_poly<'a>(&self, basis: &'a OrthoBasis<T>) -> Result<PolyInBasis<'a, T>> {
        self.check_basis(basis)?;
        basis.poly(self.ys.clone())
    }
}

/// A plane curve on `[-1, 1]` that is polynomial on each of finitely many pieces.
///
/// Projection integrates piece by piece, so kinks at piece boundaries cost no accuracy.
pub trait ParametricCurve<T: Real> {
    fn piece_count(&self) -> usize;

    /// `[a, b]` of piece `i`; pieces tile `[-1, 1]` in order.
    fn piece_bounds(&self, i: usize) -> (T, T);

    /// Polynomial degree of the curve on each piece.
    fn piece_degree(&self) -> usize;

    /// `[x, y, x', y']` at `s` inside piece `i`.
    fn sample(&self, piece: usize, s: T) -> [T; 4];

    /// Position at any `s ∈ [-1, 1]`.
    fn position(&self, s: T) -> (T, T);
}

impl<T: Real> ParametricCurve<T> for ArcCurve<T> {
    fn piece_count(&self) -> usize {
        self.segment_count()
    }

    fn piece_bounds(&self, i: usize) -> (T, T) {
        (self.s_nodes()[i], self.s_nodes()[i + 1])
    }

    fn piece_degree(&self) -> usize {
        1
    }

    #[inline]
    fn sample(&self, piece: usize, s: T) -> [T; 4] {
        let (x, y) = self.eval_on_segment(piece, s);
        let (dx, dy) = self.slope_of_segment(piece);
        [x, y, dx, dy]
    }

    fn position(&self, s: T) -> (T, T) {
        self.eval(s).unwrap_or((T::nan(), T::nan()))
    }
}

/// A polynomial plane curve given by coefficients over a reference family.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyCurve<T = f64> {
    reference: RefKind,
    xs: Vec<T>,
    ys: Vec<T>,
    dxs: Vec<T>,
    dys: Vec<T>,
}

impl<T: Real> PolyCurve<T> {
    /// `x(s) = Σ xs_k R_k(s)`, `y(s) = Σ ys_k R_k(s)`.
    pub fn new(reference: RefKind, xs: Vec<T>, ys: Vec<T>) -> Self {
        let n = xs.len().max(ys.len()).max(1);
        let mut xs = xs;
        let mut ys = ys;
        xs.resize(n, T::zero());
        ys.resize(n, T::zero());
        let d = crate::bases::reference_diff_matrix(reference, n);
        let dxs = d.mul_vec(&xs);
        let dys = d.mul_vec(&ys);
        PolyCurve {
            reference,
            xs,
            ys,
            dxs,
            dys,
        }
    }

    /// The curve represented by `cv` in `basis`.
    pub fn from_coeffs(cv: &CoeffVector<T>, basis: &OrthoBasis<T>) -> Result<Self> {
        cv.check_basis(basis)?;
        Ok(Self::new(
            basis.reference(),
            basis.to_reference(&cv.xs),
            basis.to_reference(&cv.ys),
        ))
    }

    pub fn degree(&self) -> usize {
        self.xs.len() - 1
    }
}

impl<T: Real> ParametricCurve<T> for PolyCurve<T> {
    fn piece_count(&self) -> usize {
        1
    }

    fn piece_bounds(&self, _i: usize) -> (T, T) {
        (-T::one(), T::one())
    }

    fn piece_degree(&self) -> usize {
        self.degree()
    }

    fn sample(&self, _piece: usize, s: T) -> [T; 4] {
        let r = self.reference;
        [
            clenshaw(r, &self.xs, s),
            clenshaw(r, &self.ys, s),
            clenshaw(r, &self.dxs, s),
            clenshaw(r, &self.dys, s),
        ]
    }

    fn position(&self, s: T) -> (T, T) {
        (
            clenshaw(self.reference, &self.xs, s),
            clenshaw(self.reference, &self.ys, s),
        )
    }
}

/// Quadrature on one piece, already mapped: `(node s, weight incl. w(s) ds)`.
pub(crate) struct PieceRule<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

/// Builds the rule for `∫_a^b h(s) w(s) ds` where `h` has degree `≤ integrand_degree`.
///
/// Unit weight: Gauss–Legendre on `[a, b]`. Chebyshev weight: `s = cos θ` and
/// Gauss–Legendre in `θ`, except over the whole interval where the θ-midpoint
/// rule (Gauss–Chebyshev) is exact for polynomials.
pub(crate) fn piece_rule<T: Real>(
    weight: Weight,
    a: T,
    b: T,
    integrand_degree: usize,
    cached: &QuadratureRule<T>,
) -> Result<PieceRule<T>> {
    let m = (integrand_degree / 2 + 1).max(1) + QUADRATURE_MARGIN;
    let owned;
    let gl = if cached.len() >= m {
        cached
    } else {
        owned = gauss_rule(m)?;
        &owned
    };
    let two = T::lit(2.0);
    match weight {
        Weight::Unit => {
            let half = (b - a) / two;
            let mid = (a + b) / two;
            Ok(PieceRule {
                nodes: gl.nodes.iter().map(|&x| mid + half * x).collect(),
                weights: gl.weights.iter().map(|&w| w * half).collect(),
            })
        }
        Weight::Chebyshev if a == -T::one() && b == T::one() => {
            let gc = gauss_chebyshev_rule(m)?;
            Ok(PieceRule {
                nodes: gc.nodes,
                weights: gc.weights,
            })
        }
        Weight::Chebyshev => {
            let (t0, t1) = (b.acos(), a.acos());
            let half = (t1 - t0) / two;
            let mid = (t0 + t1) / two;
            Ok(PieceRule {
                nodes: gl.nodes.iter().map(|&x| (mid + half * x).cos()).collect(),
                weights: gl.weights.iter().map(|&w| w * half).collect(),
            })
        }
    }
}

/// Coefficients of the curve's best approximation in the basis's own inner product.
///
/// `x_i = ⟨x, B_i⟩ / ⟨B_i, B_i⟩` and likewise for `y`. Moments against the
/// reference family are accumulated piece by piece and mapped through `M`.
pub fn project<T: Real, C: ParametricCurve<T> + ?Sized>(
    curve: &C,
    basis: &OrthoBasis<T>,
) -> Result<CoeffVector<T>> {
    let n = basis.len();
    let mu = basis.mu();
    let with_derivs = mu > T::zero();
    let weight = basis.kind().weight();
    let reference = basis.reference();
    let integrand_degree = basis.degree() + curve.piece_degree();

    let mut mx = vec![T::zero(); n];
    let mut my = vec![T::zero(); n];
    let mut vals = vec![T::zero(); n];
    let mut ders = vec![T::zero(); n];
    for piece in 0..curve.piece_count() {
        let (a, b) = curve.piece_bounds(piece);
        let rule = piece_rule(weight, a, b, integrand_degree, basis.segment_rule())?;
        for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
            let [x, y, dx, dy] = curve.sample(piece, s);
            if with_derivs {
                eval_all_with_derivatives(reference, s, &mut vals, &mut ders);
                let (wx, wy) = (w * x, w * y);
                let (wdx, wdy) = (w * mu * dx, w * mu * dy);
                for k in 0..n {
                    mx[k] = mx[k] + wx * vals[k] + wdx * ders[k];
                    my[k] = my[k] + wy * vals[k] + wdy * ders[k];
                }
            } else {
                eval_all(reference, s, &mut vals);
                let (wx, wy) = (w * x, w * y);
                for k in 0..n {
                    mx[k] = mx[k] + wx * vals[k];
                    my[k] = my[k] + wy * vals[k];
                }
            }
        }
    }

    let mut xs = vec![T::zero(); n];
    let mut ys = vec![T::zero(); n];
    basis.combine(&mx, &mut xs);
    basis.combine(&my, &mut ys);
    for ((x, y), &h) in xs.iter_mut().zip(ys.iter_mut()).zip(basis.sq_norms()) {
        *x = *x / h;
        *y = *y / h;
    }
    Ok(CoeffVector {
        kind: basis.kind(),
        degree: basis.degree(),
        mu,
        xs,
        ys,
    })
}

/// Evaluates the coefficient curve at `n_points` uniformly spaced parameters.
pub fn reconstruct<T: Real>(
    cv: &CoeffVector<T>,
    basis: &OrthoBasis<T>,
    n_points: usize,
) -> Result<ArcCurve<T>> {
    cv.check_basis(basis)?;
    if n_points < 2 {
        return Err(Error::InvalidArgument(format!(
            "reconstruction needs at least 2 points, got {n_points}"
        )));
    }
    let reference = basis.reference();
    let ax = basis.to_reference(&cv.xs);
    let ay = basis.to_reference(&cv.ys);
    let denom = T::of_usize(n_points - 1);
    let mut s = Vec::with_capacity(n_points);
    let mut x = Vec::with_capacity(n_points);
    let mut y = Vec::with_capacity(n_points);
    for k in 0..n_points {
        let sk = if k == n_points - 1 {
            T::one()
        } else {
            -T::one() + T::lit(2.0) * T::of_usize(k) / denom
        };
        s.push(sk);
        x.push(clenshaw(reference, &ax, sk));
        y.push(clenshaw(reference, &ay, sk));
    }
    ArcCurve::new(s, x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::build_basis;

    fn line(c: f64) -> ArcCurve<f64> {
        ArcCurve::new(vec![-1.0, 0.0, 1.0], vec![-1.0, 0.0, 1.0], vec![c, c, c]).unwrap()
    }

    #[test]
    fn diagonal_stroke_in_legendre() {
        let b = build_basis(BasisKind::Legendre, 4, 0.0).unwrap();
        let diag = ArcCurve::new(vec![-1.0, 1.0], vec![-1.0, 1.0], vec![-1.0, 1.0]).unwrap();
        let cv = project(&diag, &b).unwrap();
        for (got, want) in cv.xs.iter().zip([0.0f64, 1.0, 0.0, 0.0, 0.0]) {
            assert!((got - want).abs() < 1e-14);
        }
        assert_eq!(cv.xs, cv.ys);
    }

    #[test]
    fn constant_component_in_every_basis() {
        for kind in BasisKind::ALL {
            let b = build_basis(kind, 7, 0.125).unwrap();
            let cv = project(&line(2.5), &b).unwrap();
            assert!((cv.ys[0] - 2.5).abs() < 1e-13, "{kind}");
            assert!(cv.ys[1..].iter().all(|v| v.abs() < 1e-13), "{kind}");
        }
    }

    #[test]
    fn zero_coefficients_reconstruct_origin() {
        let b = build_basis(BasisKind::ChebyshevSobolev, 5, 0.125).unwrap();
        let cv = CoeffVector::zeros(&b);
        let r = reconstruct(&cv, &b, 11).unwrap();
        assert!(r.points().all(|p| p == (0.0, 0.0)));
        assert_eq!(r.len(), 11);
    }

    #[test]
    fn mismatched_basis_is_rejected() {
        let b5 = build_basis(BasisKind::Legendre, 5, 0.0).unwrap();
        let b6 = build_basis(BasisKind::Legendre, 6, 0.0).unwrap();
        let cv = CoeffVector::zeros(&b5);
        assert!(matches!(
            reconstruct(&cv, &b6, 10),
            Err(Error::BasisMismatch(_))
        ));
        let s1 = build_basis(BasisKind::LegendreSobolev, 5, 0.125).unwrap();
        let s2 = build_basis(BasisKind::LegendreSobolev, 5, 0.5).unwrap();
        assert!(CoeffVector::zeros(&s1).check_basis(&s2).is_err());
    }

    #[test]
    fn polynomial_curve_round_trip() {
        for kind in BasisKind::ALL {
            let b = build_basis(kind, 6, 0.125).unwrap();
            let pc = PolyCurve::new(
                kind.reference(),
                vec![0.2, -0.5, 0.3, 0.1, -0.7, 0.05, 0.4],
                vec![-0.1, 0.9, 0.0, -0.3, 0.2, 0.6, -0.2],
            );
            let cv = project(&pc, &b).unwrap();
            let back = PolyCurve::from_coeffs(&cv, &b).unwrap();
            for k in 0..=40 {
                let s = -1.0 + k as f64 / 20.0;
                let (x0, y0) = pc.position(s);
                let (x1, y1) = back.position(s);
                assert!(
                    (x0 - x1).abs() < 1e-12 && (y0 - y1).abs() < 1e-12,
                    "{kind} s={s}"
                );
            }
        }
    }
}
