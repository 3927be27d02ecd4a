//! The floating-point scalar abstraction the model is written against.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Real scalar used for trust rates, weights and path costs.
///
/// Implemented for every type that satisfies the bounds, in practice `f32`
/// and `f64`. All model arithmetic is expressed through this trait so the
/// same code runs at either precision.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into this scalar.
    ///
    /// Every finite `f64` is representable (possibly rounded) in the
    /// supported float types, so this never fails for them.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Lossy conversion to `f64` for reporting.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Tolerance used when checking that a weight vector sums to one.
    ///
    /// `1e-9` for `f64`; widened to a small multiple of machine epsilon for
    /// narrower types where `1e-9` is below the representable spacing.
    fn weight_tolerance() -> Self {
        let eps = Self::epsilon() * Self::lit(64.0);
        eps.max(Self::lit(1e-9))
    }
}

impl<T> Scalar for T where
    T: Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
}
