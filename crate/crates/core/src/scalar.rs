//! Floating point scalar abstraction shared by the numeric modules.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real scalar used by the curve, basis and approximation code: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal. Never fails for the supported types.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    #[inline]
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite real converts to f64")
    }

    /// Slack used when checking that a parameter lies in `[-1, 1]`.
    fn domain_slack() -> Self;
}

impl Real for f32 {
    fn domain_slack() -> Self {
        1e-6
    }
}

impl Real for f64 {
    fn domain_slack() -> Self {
        1e-12
    }
}

/// Returns `s` clamped into `[-1, 1]`, or `None` when it lies further out than the slack.
#[inline]
pub(crate) fn clamp_unit<T: Real>(s: T) -> Option<T> {
    let one = T::one();
    if !s.is_finite() || s.abs() > one + T::domain_slack() {
        None
    } else {
        Some(s.max(-one).min(one))
    }
}
