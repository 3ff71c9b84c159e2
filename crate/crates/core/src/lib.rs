//! Explicit upper bounds on the renormalized volume of Schottky fillings of
//! closed hyperbolic surfaces.
//!
//! A surface is given by a marked pants decomposition and Fenchel-Nielsen
//! coordinates ([`surface`]). [`bounds::certify`] evaluates every bound and
//! decides whether negativity of the renormalized volume is certified;
//! [`fuchsian`] builds the holonomy representation and scans it for short
//! geodesics to support the systole hypothesis the certificate rests on.
//!
//! All numeric code is generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below fix binary64, which every documented tolerance assumes.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0)` deliberately rejects NaN

pub mod bounds;
pub mod error;
pub mod fuchsian;
pub mod hypmath;
pub mod scalar;
pub mod surface;
pub mod symmetrize;

pub use error::{Error, Result};
pub use scalar::Real;

pub type UniversalConstants64 = hypmath::UniversalConstants<f64>;
pub type FnCoordinates64 = surface::FnCoordinates<f64>;
pub type SurfaceDocument64 = surface::SurfaceDocument<f64>;
pub type HolonomyRepresentation64 = fuchsian::HolonomyRepresentation<f64>;
pub type GeodesicCandidate64 = fuchsian::GeodesicCandidate<f64>;
pub type ScanOutcome64 = fuchsian::ScanOutcome<f64>;
pub type SymmetrizationResult64 = symmetrize::SymmetrizationResult<f64>;
pub type EarthquakeSpec64 = bounds::EarthquakeSpec<f64>;
pub type BoundReport64 = bounds::BoundReport<f64>;
pub type CertifyOptions64 = bounds::CertifyOptions<f64>;
