use serde::Serialize;

use super::{OrthoBasis, PolyInBasis};
use crate::error::{Error, Result};
use crate::scalar::{clamp_unit, Real};

/// Evaluation condition number of a polynomial at a point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Conditioning<T = f64> {
    /// `Σ |c_i| |B_i(s)|`
    pub absolute: T,
    /// `absolute / |p(s)|`; `+∞` when `|p(s)|` is below `1e-300`.
    pub relative: T,
    /// `p(s)`
    pub value: T,
}

impl<T: Real> Conditioning<T> {
    pub fn is_degenerate(&self) -> bool {
        self.relative.is_infinite()
    }
}

/// Sensitivity of `p(s)` to relative perturbations of the coefficients.
pub fn condition_number<T: Real>(p: &PolyInBasis<'_, T>, s: T) -> Result<Conditioning<T>> {
    let s = clamp_unit(s).ok_or_else(|| Error::out_of_domain(s))?;
    let basis = p.basis();
    let mut elems = vec![T::zero(); basis.len()];
    basis.eval_elements(s, &mut elems);
    let absolute = p
        .coeffs()
        .iter()
        .zip(&elems)
        .fold(T::zero(), |acc, (c, b)| acc + c.abs() * b.abs());
    let value = p.eval_unchecked(s);
    let floor = T::lit(1e-300).max(T::min_positive_value());
    let relative = if value.abs() < floor {
        T::infinity()
    } else {
        absolute / value.abs()
    };
    Ok(Conditioning {
        absolute,
        relative,
        value,
    })
}

/// Grid approximation of `max_s ‖(B_0(s), …, B_d(s))‖₂` over `grid_size` uniform points.
pub fn basis_sup_norm<T: Real>(basis: &OrthoBasis<T>, grid_size: usize) -> Result<T> {
    if grid_size < 2 {
        return Err(Error::InvalidArgument(format!(
            "grid needs at least 2 points, got {grid_size}"
        )));
    }
    let mut elems = vec![T::zero(); basis.len()];
    let mut best = T::zero();
    let denom = T::of_usize(grid_size - 1);
    for k in 0..grid_size {
        let s = if k == grid_size - 1 {
            T::one()
        } else {
            -T::one() + T::lit(2.0) * T::of_usize(k) / denom
        };
        basis.eval_elements(s, &mut elems);
        let norm = elems.iter().map(|&b| b * b).sum::<T>().sqrt();
        best = best.max(norm);
    }
    Ok(best)
}
