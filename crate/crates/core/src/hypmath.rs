//! Universal constants, collar geometry and the auxiliary functions used by
//! the bound evaluators.
//!
//! Everything here is pure. Domain violations are reported as
//! [`Error::Domain`](crate::Error::Domain) rather than propagated as NaN.

use serde::Serialize;

use crate::error::{domain, Result};
use crate::scalar::{coth, Real};

/// Iteration cap for the bracketed inversion of [`collar_profile`].
pub const PROFILE_INVERSE_MAX_ITER: usize = 200;

/// The constants every bound is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UniversalConstants<T> {
    /// `4 pi^3 / sqrt(e)`, the coefficient of the reciprocal-length sum.
    pub s: T,
    /// `4 pi log(pi e^{0.502 pi} / arsinh 1)`, the per-curve bending allowance.
    pub q: T,
    /// `3 coth^2(1/4)`, the earthquake-derivative constant for thick curves.
    pub c: T,
    /// Two-dimensional Margulis constant `2 arsinh 1`.
    pub eps0: T,
    /// `6 sqrt(3 pi)`, the per-genus slope of the Bers length bound.
    pub bers_coeff: T,
}

pub fn universal_constants<T: Real>() -> UniversalConstants<T> {
    let pi = T::PI();
    let e = T::E();
    let one = T::one();
    let quarter = T::lit(0.25);
    UniversalConstants {
        s: T::lit(4.0) * pi.powi(3) / e.sqrt(),
        q: T::lit(4.0) * pi * (pi * (T::lit(0.502) * pi).exp() / one.asinh()).ln(),
        c: T::lit(3.0) * coth(quarter).powi(2),
        eps0: margulis_constant(),
        bers_coeff: T::lit(6.0) * (T::lit(3.0) * pi).sqrt(),
    }
}

#[inline]
pub fn margulis_constant<T: Real>() -> T {
    T::lit(2.0) * T::one().asinh()
}

/// Half-width `L = arsinh(1 / sinh(len / 2))` of the standard collar around a
/// simple closed geodesic of length `len`.
pub fn collar_halfwidth<T: Real>(len: T) -> Result<T> {
    if !(len > T::zero()) || !len.is_finite() {
        return Err(domain("collar_halfwidth", format!("length must be positive and finite, got {len}")));
    }
    Ok((T::one() / (len / T::lit(2.0)).sinh()).asinh())
}

/// Injectivity radius at distance `d` from the boundary of the thin tube
/// around a geodesic of length `len`.
///
/// Maximal on the tube boundary (`d = 0`), equal to `len / 2` on the core
/// geodesic (`d = L`).
pub fn tube_injectivity<T: Real>(len: T, d: T) -> Result<T> {
    let width = collar_halfwidth(len)?;
    if !(d >= T::zero() && d <= width) {
        return Err(domain("tube_injectivity", format!("distance {d} outside [0, {width}] for length {len}")));
    }
    Ok(((len / T::lit(2.0)).sinh() * (width - d).cosh()).asinh())
}

// Unchecked profile; NaN or +inf once sinh^2(x/2) reaches 1.
#[inline]
fn profile_raw<T: Real>(x: T) -> T {
    let s = (x / T::lit(2.0)).sinh();
    x / T::lit(2.0) + (s / (T::one() - s * s).sqrt()).asinh()
}

/// `F(x) = x/2 + arsinh(sinh(x/2) / sqrt(1 - sinh^2(x/2)))` on `(0, eps0)`.
///
/// Strictly increasing, `F(x) ~ x` near zero and `F -> +inf` at `eps0`.
pub fn collar_profile<T: Real>(x: T) -> Result<T> {
    let eps0 = margulis_constant::<T>();
    if !(x > T::zero() && x < eps0) {
        return Err(domain("collar_profile", format!("argument {x} outside (0, {eps0})")));
    }
    let v = profile_raw(x);
    if !v.is_finite() {
        return Err(domain("collar_profile", format!("argument {x} too close to the Margulis constant")));
    }
    Ok(v)
}

/// Inverse of [`collar_profile`] by bracketed bisection.
///
/// The bracket starts at `(0, eps0)` and is narrowed to `(y/2, y)` whenever
/// that is valid (`F(x) > x` on the whole domain), so tiny arguments are
/// resolved to full relative precision. Iteration stops when the midpoint
/// no longer separates the bracket, which is well inside the `1e-12`
/// absolute tolerance.
pub fn collar_profile_inverse<T: Real>(y: T) -> Result<T> {
    if !(y > T::zero()) || !y.is_finite() {
        return Err(domain("collar_profile_inverse", format!("argument must be positive and finite, got {y}")));
    }
    let two = T::lit(2.0);
    let mut lo = T::zero();
    let mut hi = margulis_constant::<T>();
    if y < hi {
        hi = y;
        let half = y / two;
        if profile_raw(half) < y {
            lo = half;
        }
    }
    for _ in 0..PROFILE_INVERSE_MAX_ITER {
        let mid = lo + (hi - lo) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        // NaN near eps0 counts as "above".
        if profile_raw(mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo + (hi - lo) / two)
}

/// `arccosh(e^2)`, the offset in [`distortion_gauge`].
#[inline]
pub fn gauge_offset<T: Real>() -> T {
    (T::E() * T::E()).acosh()
}

/// `g(x) = e^{-m} e^{-pi^2 / (2x)} / 2` with `m = arccosh(e^2)`.
pub fn distortion_gauge<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(domain("distortion_gauge", format!("argument must be positive, got {x}")));
    }
    let pi = T::PI();
    Ok((-gauge_offset::<T>() - pi * pi / (T::lit(2.0) * x)).exp() / T::lit(2.0))
}

/// `L(x) = 1 + 2 pi / F^{-1}(g(x))`: the factor by which lengths of fixed
/// curves can shrink on the convex core boundary when the shortest
/// compressible geodesic has half-length `x`.
///
/// Decreasing in `x`. Returns `+inf` when `g(x)` underflows (for binary64,
/// `x` below roughly `0.0066`).
pub fn length_distortion<T: Real>(x: T) -> Result<T> {
    let g = distortion_gauge(x)?;
    if g <= T::zero() {
        return Ok(T::infinity());
    }
    let base = collar_profile_inverse(g)?;
    Ok(T::one() + T::lit(2.0) * T::PI() / base)
}

/// Upper bound `6 sqrt(3 pi) (g - 1)` on the Bers constant of genus `g`.
pub fn bers_length_bound<T: Real>(genus: usize) -> Result<T> {
    if genus < 2 {
        return Err(domain("bers_length_bound", format!("genus must be at least 2, got {genus}")));
    }
    Ok(T::lit(6.0) * (T::lit(3.0) * T::PI()).sqrt() * T::count(genus - 1))
}
