use serde::Serialize;

use super::{piece_rule, CoeffVector, ParametricCurve, PolyCurve};
use crate::bases::{OrthoBasis, Weight};
use crate::error::Result;
use crate::scalar::Real;

/// Points in the uniform grid used for the sup-norm error.
pub const LINF_GRID: usize = 2001;

/// Deviation between a curve and its polynomial approximation.
///
/// All three use the unit weight on `[-1, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ApproxError<T = f64> {
    /// `√∫ (Δx² + Δy²) ds`
    pub l2: T,
    /// Largest pointwise Euclidean deviation on the grid.
    pub linf: T,
    /// `l2 + μ √∫ (Δx'² + Δy'²) ds`
    pub sobolev: T,
}

/// Squared integrals `(∫|Δ|² w, ∫|Δ'|² w)` between `curve` and the polynomial `approx`.
fn deviation_integrals<T: Real, C: ParametricCurve<T> + ?Sized>(
    curve: &C,
    approx: &PolyCurve<T>,
    basis: &OrthoBasis<T>,
    weight: Weight,
) -> Result<(T, T)> {
    let degree = 2 * basis.degree().max(curve.piece_degree());
    let mut value = T::zero();
    let mut slope = T::zero();
    for piece in 0..curve.piece_count() {
        let (a, b) = curve.piece_bounds(piece);
        let rule = piece_rule(weight, a, b, degree, basis.segment_rule())?;
        for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
            let [x, y, dx, dy] = curve.sample(piece, s);
            let [px, py, pdx, pdy] = approx.sample(0, s);
            value = value + w * ((x - px).powi(2) + (y - py).powi(2));
            slope = slope + w * ((dx - pdx).powi(2) + (dy - pdy).powi(2));
        }
    }
    Ok((value, slope))
}

/// L², grid L∞ and Sobolev deviation of `cv` from `curve`, with the basis's own `μ`.
///
/// Classical bases carry `μ = 0`, so their Sobolev error equals the L² error; use
/// [`approx_error_with_mu`] to compare bases at a common `μ`.
pub fn approx_error<T: Real, C: ParametricCurve<T> + ?Sized>(
    curve: &C,
    cv: &CoeffVector<T>,
    basis: &OrthoBasis<T>,
) -> Result<ApproxError<T>> {
    approx_error_with_mu(curve, cv, basis, basis.mu())
}

pub fn approx_error_with_mu<T: Real, C: ParametricCurve<T> + ?Sized>(
    curve: &C,
    cv: &CoeffVector<T>,
    basis: &OrthoBasis<T>,
    mu: T,
) -> Result<ApproxError<T>> {
    let approx = PolyCurve::from_coeffs(cv, basis)?;
    let (value, slope) = deviation_integrals(curve, &approx, basis, Weight::Unit)?;
    let l2 = value.max(T::zero()).sqrt();

    let denom = T::of_usize(LINF_GRID - 1);
    let mut linf = T::zero();
    for k in 0..LINF_GRID {
        let s = if k == LINF_GRID - 1 {
            T::one()
        } else {
            -T::one() + T::lit(2.0) * T::of_usize(k) / denom
        };
        let (x, y) = curve.position(s);
        let (px, py) = approx.position(s);
        linf = linf.max((x - px).hypot(y - py));
    }

    Ok(ApproxError {
        l2,
        linf,
        sobolev: l2 + mu * slope.max(T::zero()).sqrt(),
    })
}

/// `√(∫|Δ|² w + μ ∫|Δ'|² w)` in the basis's own inner product.
///
/// This is the quantity the projection minimizes.
pub fn projection_residual<T: Real, C: ParametricCurve<T> + ?Sized>(
    curve: &C,
    cv: &CoeffVector<T>,
    basis: &OrthoBasis<T>,
) -> Result<T> {
    let approx = PolyCurve::from_coeffs(cv, basis)?;
    let (value, slope) = deviation_integrals(curve, &approx, basis, basis.kind().weight())?;
    Ok((value + basis.mu() * slope).max(T::zero()).sqrt())
}
