//! Digital ink as arc-length parameterized polynomial plane curves.
//!
//! Handwritten symbols are turned into curves `(x(s), y(s))` over `s ∈ [-1, 1]`
//! and projected onto one of four graded orthogonal bases: Legendre,
//! Chebyshev, and their Sobolev variants whose inner product also weighs
//! derivatives. The coefficient vectors are a compact representation used for
//! approximation, conditioning studies and digit recognition.
//!
//! The numeric core is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar for the common cases. Exact rational arithmetic is
//! available through [`exact`] with [`Rational`].

// NaN must fail range checks, so `!(x > 0)` is intended throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod approx;
pub mod bases;
pub mod classify;
pub mod data_io;
pub mod error;
pub mod exact;
pub mod ink;
pub mod linalg;
pub mod report_io;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

/// Arbitrary-precision rational, for the exact constructions in [`exact`].
pub type Rational = num_rational::BigRational;

pub type InkPoint = ink::InkPoint<f64>;
pub type Stroke = ink::Stroke<f64>;
pub type InkSymbol = ink::InkSymbol<f64>;
pub type ArcCurve = ink::ArcCurve<f64>;
pub type OrthoBasis = bases::OrthoBasis<f64>;
pub type QuadratureRule = bases::QuadratureRule<f64>;
pub type InnerProduct = bases::InnerProduct<f64>;
pub type CoeffVector = approx::CoeffVector<f64>;
pub type ApproxError = approx::ApproxError<f64>;
pub type BoundReport = approx::BoundReport<f64>;

pub type InkSymbolF32 = ink::InkSymbol<f32>;
pub type ArcCurveF32 = ink::ArcCurve<f32>;
pub type OrthoBasisF32 = bases::OrthoBasis<f32>;
pub type CoeffVectorF32 = approx::CoeffVector<f32>;

pub use bases::BasisKind;

/// Derivative weight used throughout the experiments, `μ = 1/8`.
pub const DEFAULT_MU: f64 = 0.125;

/// Highest degree supported by the tools and service.
pub const MAX_DEGREE: usize = 20;
