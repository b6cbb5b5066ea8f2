//! The classical Legendre and Chebyshev families: recurrences, Clenshaw
//! summation, norms and differentiation in coefficient space.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::SquareMatrix;
use crate::scalar::{clamp_unit, Real};

/// Classical family every basis is expressed against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RefKind {
    Legendre,
    Chebyshev,
}

/// `R_i(s)` for `i = 0..out.len()`.
pub fn eval_all<T: Real>(kind: RefKind, s: T, out: &mut [T]) {
    let n = out.len();
    if n == 0 {
        return;
    }
    out[0] = T::one();
    if n == 1 {
        return;
    }
    out[1] = s;
    match kind {
        RefKind::Legendre => {
            for k in 1..n - 1 {
                let kf = T::of_usize(k);
                out[k + 1] =
                    ((kf + kf + T::one()) * s * out[k] - kf * out[k - 1]) / (kf + T::one());
            }
        }
        RefKind::Chebyshev => {
            let two_s = s + s;
            for k in 1..n - 1 {
                out[k + 1] = two_s * out[k] - out[k - 1];
            }
        }
    }
}

/// `R_i(s)` and `R_i'(s)` together.
pub fn eval_all_with_derivatives<T: Real>(kind: RefKind, s: T, vals: &mut [T], ders: &mut [T]) {
    eval_all(kind, s, vals);
    let n = ders.len();
    if n == 0 {
        return;
    }
    ders[0] = T::zero();
    if n == 1 {
        return;
    }
    ders[1] = T::one();
    match kind {
        RefKind::Legendre => {
            // P'_{k+1} = P'_{k-1} + (2k + 1) P_k
            for k in 1..n - 1 {
                ders[k + 1] = ders[k - 1] + T::of_usize(2 * k + 1) * vals[k];
            }
        }
        RefKind::Chebyshev => {
            // T'_{k+1} = 2 T_k + 2 s T'_k − T'_{k-1}
            let two = T::lit(2.0);
            for k in 1..n - 1 {
                ders[k + 1] = two * vals[k] + two * s * ders[k] - ders[k - 1];
            }
        }
    }
}

/// Single reference element `P_i(s)` or `T_i(s)`.
pub fn eval_reference<T: Real>(kind: RefKind, i: usize, s: T) -> Result<T> {
    let s = clamp_unit(s).ok_or_else(|| Error::out_of_domain(s))?;
    let mut buf = vec![T::zero(); i + 1];
    eval_all(kind, s, &mut buf);
    Ok(buf[i])
}

/// Clenshaw summation of `Σ a_k R_k(s)`.
pub fn clenshaw<T: Real>(kind: RefKind, coeffs: &[T], s: T) -> T {
    let n = coeffs.len();
    match n {
        0 => return T::zero(),
        1 => return coeffs[0],
        _ => {}
    }
    let mut b1 = T::zero();
    let mut b2 = T::zero();
    match kind {
        RefKind::Legendre => {
            // P_{k+1} = α_k P_k + β_k P_{k-1},  α_k = (2k+1)s/(k+1),  β_k = −k/(k+1)
            for k in (1..n).rev() {
                let kf = T::of_usize(k);
                let alpha = (kf + kf + T::one()) * s / (kf + T::one());
                let beta_next = -(kf + T::one()) / (kf + T::lit(2.0));
                let b = coeffs[k] + alpha * b1 + beta_next * b2;
                b2 = b1;
                b1 = b;
            }
            coeffs[0] + s * b1 - b2 / T::lit(2.0)
        }
        RefKind::Chebyshev => {
            let two_s = s + s;
            for k in (1..n).rev() {
                let b = coeffs[k] + two_s * b1 - b2;
                b2 = b1;
                b1 = b;
            }
            coeffs[0] + s * b1 - b2
        }
    }
}

/// `⟨R_i, R_i⟩` under the family's own weight.
pub fn reference_sq_norm<T: Real>(kind: RefKind, i: usize) -> T {
    match kind {
        RefKind::Legendre => T::lit(2.0) / T::of_usize(2 * i + 1),
        RefKind::Chebyshev if i == 0 => T::PI(),
        RefKind::Chebyshev => T::FRAC_PI_2(),
    }
}

/// Differentiation matrix `D` with `(D a)_k` the coefficients of `(Σ a_j R_j)'`.
pub fn reference_diff_matrix<T: Real>(kind: RefKind, n: usize) -> SquareMatrix<T> {
    let mut d = SquareMatrix::zeros(n);
    for j in 1..n {
        // R_j' only involves R_k with j − k odd.
        for k in (0..j).rev().step_by(2) {
            d[(k, j)] = match kind {
                RefKind::Legendre => T::of_usize(2 * k + 1),
                RefKind::Chebyshev if k == 0 => T::of_usize(j),
                RefKind::Chebyshev => T::of_usize(2 * j),
            };
        }
    }
    d
}
