//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! All geometry is written against [`Real`], which is implemented for `f32`
//! and `f64`. Tolerances that are stated for binary64 are scaled up to a few
//! machine epsilons when the scalar is narrower, see [`Real::tol`].

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point scalar usable by the bound evaluators and the holonomy code.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static {
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        // f32/f64 conversions from f64 never fail; they round or saturate.
        Self::from_f64(x).unwrap_or_else(Self::nan)
    }

    /// Conversion from a count.
    #[inline]
    fn count(n: usize) -> Self {
        Self::from_usize(n).unwrap_or_else(Self::nan)
    }

    /// A binary64 tolerance, widened to `64 * epsilon` for narrower types.
    #[inline]
    fn tol(binary64: f64) -> Self {
        let floor = Self::epsilon() * Self::lit(64.0);
        Self::lit(binary64).max(floor)
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Real for T where T: Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static {}

/// `coth(x) = cosh(x) / sinh(x)`.
#[inline]
pub fn coth<T: Real>(x: T) -> T {
    x.cosh() / x.sinh()
}
