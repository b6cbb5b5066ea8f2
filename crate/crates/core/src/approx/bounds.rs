//! Sobolev norms computed from coefficients and the coefficient-difference bound
//! `‖f − g‖_s ≤ √n (1 + μ‖D‖) ‖P‖ ‖f − g‖_∞`.

use serde::Serialize;

use crate::bases::{basis_sup_norm, OrthoBasis, PolyInBasis};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Grid used for the reported sup-norm of the basis vector.
pub const SUP_NORM_GRID: usize = 2001;

/// Relative tolerance of the power iteration for `‖D‖₂`.
pub const SPECTRAL_TOL: f64 = 1e-10;

/// `(‖p‖, ‖p'‖)` in the L² norm of the basis's weight.
///
/// Uses the reference coefficients, whose Gram matrix is diagonal with known entries.
pub fn l2_norms<T: Real>(p: &PolyInBasis<'_, T>) -> (T, T) {
    let basis = p.basis();
    let a = p.reference_coeffs();
    let da = basis.ref_diff().mul_vec(&a);
    let h = basis.ref_sq_norms();
    let sq = |v: &[T]| v.iter().zip(h).map(|(&c, &hk)| c * c * hk).sum::<T>();
    (sq(&a).sqrt(), sq(&da).sqrt())
}

/// `‖p‖ + μ ‖p'‖`, the sum-of-norms form used by the bound.
pub fn sobolev_norm<T: Real>(p: &PolyInBasis<'_, T>, mu: T) -> T {
    let (v, d) = l2_norms(p);
    v + mu * d
}

/// `√(‖p‖² + μ ‖p'‖²)`, the norm induced by the Sobolev inner product.
pub fn induced_sobolev_norm<T: Real>(p: &PolyInBasis<'_, T>, mu: T) -> T {
    let (v, d) = l2_norms(p);
    (v * v + mu * d * d).sqrt()
}

/// `‖P‖ = √(Σ_i ∫ B_i² w ds)`, the L² norm of the vector of basis functions.
pub fn basis_vector_l2_norm<T: Real>(basis: &OrthoBasis<T>) -> T {
    let h = basis.ref_sq_norms();
    let m = basis.change_of_basis();
    (0..basis.len())
        .map(|i| {
            m.row(i)[..=i]
                .iter()
                .zip(h)
                .map(|(&c, &hk)| c * c * hk)
                .sum::<T>()
        })
        .sum::<T>()
        .sqrt()
}

/// Both sides of the coefficient-difference bound for one pair of polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundReport<T = f64> {
    /// `‖f − g‖ + μ ‖f' − g'‖`
    pub lhs: T,
    /// `√n (1 + μ‖D‖) ‖P‖ ‖f − g‖_∞`
    pub rhs: T,
    pub mu: T,
    pub n: usize,
    /// Spectral norm of the differentiation matrix.
    pub norm_d: T,
    /// L² norm of the basis vector, the factor used in `rhs`.
    pub norm_p: T,
    /// Grid sup-norm of the basis vector, reported for comparison.
    pub norm_p_sup: T,
    /// `‖f − g‖_∞` over the coefficients.
    pub coeff_diff_inf: T,
    /// `√n ‖f − g‖_∞ (1 + μ‖D‖)`, the variant without the basis factor.
    pub rhs_without_basis: T,
    pub holds: bool,
}

/// Evaluates both sides of the bound for `f − g`.
pub fn theorem2_bound<T: Real>(
    f: &PolyInBasis<'_, T>,
    g: &PolyInBasis<'_, T>,
    mu: T,
) -> Result<BoundReport<T>> {
    let basis = f.basis();
    let same = std::ptr::eq(basis, g.basis())
        || (basis.kind() == g.basis().kind()
            && basis.degree() == g.basis().degree()
            && basis.mu() == g.basis().mu());
    if !same {
        return Err(Error::BasisMismatch(format!(
            "{} d={} against {} d={}",
            basis.kind(),
            basis.degree(),
            g.basis().kind(),
            g.basis().degree()
        )));
    }
    let diff: Vec<T> = f
        .coeffs()
        .iter()
        .zip(g.coeffs())
        .map(|(&a, &b)| a - b)
        .collect();
    let coeff_diff_inf = diff.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let lhs = sobolev_norm(&basis.poly(diff)?, mu);

    let n = basis.len();
    let norm_d = basis.diff_matrix().spectral_norm(T::lit(SPECTRAL_TOL));
    let norm_p = basis_vector_l2_norm(basis);
    let norm_p_sup = basis_sup_norm(basis, SUP_NORM_GRID)?;
    let root_n = T::of_usize(n).sqrt();
    let rhs_without_basis = root_n * coeff_diff_inf * (T::one() + mu * norm_d);
    let rhs = rhs_without_basis * norm_p;
    // The bound is attained with equality for a single constant term; allow for rounding.
    let slack = T::lit(8.0) * T::epsilon() * rhs;
    Ok(BoundReport {
        lhs,
        rhs,
        mu,
        n,
        norm_d,
        norm_p,
        norm_p_sup,
        coeff_diff_inf,
        rhs_without_basis,
        holds: lhs <= rhs + slack,
    })
}
