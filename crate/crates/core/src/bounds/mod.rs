//! Upper bounds on the renormalized volume of Schottky fillings.
//!
//! Every evaluator is a closed-form expression in the universal constants
//! of [`crate::hypmath`]; none of them computes a volume. [`certify`] strings
//! them together for one surface.

mod certify;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::hypmath::{length_distortion, universal_constants};
use crate::scalar::{coth, Real};

pub use certify::{
    certify, BoundReport, CertifiedBy, CertifyOptions, ComparatorReport, HypothesisRecord, Provenance,
    SymmetrizationSummary, ThresholdEntry, Verdict,
};

fn check_short<T: Real>(op: &'static str, lengths: &[T]) -> Result<()> {
    for &l in lengths {
        if !(l > T::zero() && l <= T::one()) {
            return Err(domain(op, format!("short-curve length {l} outside (0, 1]")));
        }
    }
    Ok(())
}

fn reciprocal_sum<T: Real>(lengths: &[T]) -> T {
    lengths.iter().fold(T::zero(), |acc, &l| acc + T::one() / l)
}

/// Bound for a symmetric surface whose pants curves are fixed component-wise:
/// `-(S/4) sum 1/l_i + (Q/4) k`. Negative whenever `k > 0`.
pub fn symmetric_vr_bound<T: Real>(short_lengths: &[T]) -> Result<T> {
    check_short("symmetric_vr_bound", short_lengths)?;
    let c = universal_constants::<T>();
    let four = T::lit(4.0);
    Ok(-(c.s / four) * reciprocal_sum(short_lengths) + c.q / four * T::count(short_lengths.len()))
}

/// Bound for a symmetric surface with pointwise-fixed curves of the given
/// lengths, when the shortest compressible geodesic has half-length `rho`:
/// `-pi / (4 L(rho)) sum l_i`.
pub fn symmetric_vr_bound_bc<T: Real>(fixed_lengths: &[T], rho: T) -> Result<T> {
    const OP: &str = "symmetric_vr_bound_bc";
    if fixed_lengths.iter().any(|&l| !(l > T::zero()) || !l.is_finite()) {
        return Err(domain(OP, "lengths must be positive and finite"));
    }
    if !(rho > T::zero()) {
        return Err(domain(OP, format!("rho must be positive, got {rho}")));
    }
    let total = fixed_lengths.iter().fold(T::zero(), |a, &l| a + l);
    Ok(-T::PI() / (T::lit(4.0) * length_distortion(rho)?) * total)
}

/// Pointwise bound `3 l coth^2(inj/2) t` on the derivative of the
/// renormalized volume along an earthquake of magnitude `t`.
pub fn dvr_pointwise_bound<T: Real>(len: T, inj: T, t: T) -> Result<T> {
    if !(len > T::zero()) || !(inj > T::zero()) || !(t >= T::zero()) {
        return Err(domain("dvr_pointwise_bound", format!("need len > 0, inj > 0, t >= 0; got ({len}, {inj}, {t})")));
    }
    Ok(T::lit(3.0) * len * coth(inj / T::lit(2.0)).powi(2) * t)
}

/// How a curve of an earthquake multi-curve sits in the filling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EarthquakeClass {
    /// Compressible, length at most 1.
    CompressibleShort,
    /// Compressible with `2 inj >= 1` along the curve.
    CompressibleThick,
    Incompressible,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EarthquakeEntry<T> {
    pub curve: usize,
    pub length: T,
    /// Twist magnitude; the bounds do not depend on direction.
    pub twist: T,
    pub class: EarthquakeClass,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct EarthquakeSpec<T> {
    entries: Vec<EarthquakeEntry<T>>,
}

impl<T: Real> EarthquakeSpec<T> {
    pub fn new(entries: Vec<EarthquakeEntry<T>>) -> Result<Self> {
        const OP: &str = "EarthquakeSpec";
        for e in &entries {
            if !(e.length > T::zero()) || !e.length.is_finite() {
                return Err(domain(OP, format!("curve {}: length {} must be positive", e.curve, e.length)));
            }
            if !(e.twist >= T::zero()) || !e.twist.is_finite() {
                return Err(domain(OP, format!("curve {}: twist magnitude {} must be >= 0", e.curve, e.twist)));
            }
            if e.class == EarthquakeClass::CompressibleShort && e.length > T::one() {
                return Err(domain(
                    OP,
                    format!("curve {}: class compressible_short but length {} > 1", e.curve, e.length),
                ));
            }
        }
        Ok(EarthquakeSpec { entries })
    }

    pub fn entries(&self) -> &[EarthquakeEntry<T>] {
        &self.entries
    }

    /// Disjoint union of two multi-curves.
    pub fn concat(mut self, other: Self) -> Self {
        self.entries.extend(other.entries);
        self
    }
}

/// Bound on `|V_R(X_1) - V_R(X_0)|` along an earthquake:
/// short compressible curves contribute `3 l coth^2(l/4) t`, thick ones
/// `C t l` and incompressible ones `3 t l`.
pub fn earthquake_variation_bound<T: Real>(spec: &EarthquakeSpec<T>) -> T {
    let c = universal_constants::<T>().c;
    let three = T::lit(3.0);
    spec.entries.iter().fold(T::zero(), |acc, e| {
        acc + match e.class {
            EarthquakeClass::CompressibleShort => three * e.length * coth(e.length / T::lit(4.0)).powi(2) * e.twist,
            EarthquakeClass::CompressibleThick => c * e.twist * e.length,
            EarthquakeClass::Incompressible => three * e.twist * e.length,
        }
    })
}

/// Cost of moving to the nearest symmetric surface when every twist moves
/// by at most a quarter of its length:
/// `(3/4) sum_short coth^2(l/4) l^2 + (C/4) sum_thick l^2`.
pub fn symmetrization_correction<T: Real>(short: &[T], thick: &[T]) -> Result<T> {
    check_short("symmetrization_correction", short)?;
    if thick.iter().any(|&l| !(l > T::zero()) || !l.is_finite()) {
        return Err(domain("symmetrization_correction", "thick lengths must be positive and finite"));
    }
    let c = universal_constants::<T>().c;
    let quarter = T::lit(0.25);
    let s = short.iter().fold(T::zero(), |a, &l| a + coth(l * quarter).powi(2) * l * l);
    let t = thick.iter().fold(T::zero(), |a, &l| a + l * l);
    Ok(T::lit(0.75) * s + c * quarter * t)
}

fn check_genus_k(op: &'static str, genus: usize, k: usize) -> Result<()> {
    if genus < 2 {
        return Err(domain(op, format!("genus must be at least 2, got {genus}")));
    }
    if k > 3 * genus - 3 {
        return Err(domain(op, format!("{k} short curves exceed 3g - 3 = {}", 3 * genus - 3)));
    }
    Ok(())
}

/// Upper bound on `V_R(M_P(X))` for a genus-`genus` surface whose only
/// geodesics of length `<= 1` are the given disjoint short curves:
///
/// `-(pi^3/sqrt e) sum 1/l_i + (9 + (3/4) coth^2(1/4)) k
///  + 81 coth^2(1/4) pi (3g - 3 - k) (g - 1)^2`.
pub fn mainthm_bound<T: Real>(genus: usize, short_lengths: &[T]) -> Result<T> {
    const OP: &str = "mainthm_bound";
    let k = short_lengths.len();
    check_genus_k(OP, genus, k)?;
    check_short(OP, short_lengths)?;
    let pi = T::PI();
    let coth2 = coth(T::lit(0.25)).powi(2);
    let g1 = T::count(genus - 1);
    Ok(-(pi.powi(3) / T::E().sqrt()) * reciprocal_sum(short_lengths)
        + (T::lit(9.0) + T::lit(0.75) * coth2) * T::count(k)
        + T::lit(81.0) * coth2 * pi * T::count(3 * genus - 3 - k) * g1 * g1)
}

/// [`mainthm_bound`] with the per-curve constant `9` replaced by the sharper
/// `Q/4`.
pub fn mainthm_bound_sharp<T: Real>(genus: usize, short_lengths: &[T]) -> Result<T> {
    const OP: &str = "mainthm_bound_sharp";
    let k = short_lengths.len();
    check_genus_k(OP, genus, k)?;
    let sym = symmetric_vr_bound(short_lengths)?;
    Ok(sym + bers_correction_aggregate::<T>(genus, k))
}

/// `(C/4) k + 27 C pi (3g - 3 - k)(g - 1)^2`: the symmetrization cost with short
/// curves at length 1 and thick curves at the Bers bound.
pub fn bers_correction_aggregate<T: Real>(genus: usize, k: usize) -> T {
    let c = universal_constants::<T>().c;
    let g1 = T::count(genus - 1);
    c / T::lit(4.0) * T::count(k) + T::lit(27.0) * c * T::PI() * T::count(3 * genus - 3 - k) * g1 * g1
}

/// `B = -(pi^3/sqrt e)(k - k1) + (9 + C/4) k + 27 C pi (3g - 3 - k)(g - 1)^2`.
pub fn threshold_denominator<T: Real>(genus: usize, k1: usize, k: usize) -> Result<T> {
    const OP: &str = "threshold_denominator";
    check_genus_k(OP, genus, k)?;
    if k1 == 0 || k1 > k {
        return Err(domain(OP, format!("need 0 < k1 <= k, got k1 = {k1}, k = {k}")));
    }
    let c = universal_constants::<T>().c;
    let g1 = T::count(genus - 1);
    Ok(-(T::PI().powi(3) / T::E().sqrt()) * T::count(k - k1)
        + (T::lit(9.0) + c / T::lit(4.0)) * T::count(k)
        + T::lit(27.0) * c * T::PI() * T::count(3 * genus - 3 - k) * g1 * g1)
}

/// Length threshold `A(g, k1, k) = (pi^3/sqrt e) k1 / B`: a genus-`g` surface
/// with `k1` geodesics shorter than `A`, `k` of length at most 1 and no other
/// short geodesic has a Schottky filling of negative renormalized volume.
///
/// This is the supremum of admissible thresholds; the inequality on lengths
/// is strict.
pub fn negativity_threshold<T: Real>(genus: usize, k1: usize, k: usize) -> Result<T> {
    const OP: &str = "negativity_threshold";
    let b = threshold_denominator::<T>(genus, k1, k)?;
    if !(b > T::lit(2.0) * T::count(k)) {
        return Err(Error::Invariant { op: OP, msg: format!("B = {b} is not above 2k = {}", 2 * k) });
    }
    Ok(T::PI().powi(3) / T::E().sqrt() * T::count(k1) / b)
}

/// Result of the prior-work comparator bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ComparatorOutcome<T> {
    Applicable {
        value: T,
        /// `sum sqrt(l_i)`.
        sqrt_sum: T,
        /// Negative iff `sqrt_sum <= sqrt(pi (pi - 2)(g - 1) / 3)`.
        negativity_bound: T,
        negative: bool,
    },
    /// `(sum sqrt l_i)^2 / (pi - 2) > pi (g - 1)`.
    NotApplicable { lhs: T, rhs: T },
}

impl<T: Real> ComparatorOutcome<T> {
    pub fn value(&self) -> Option<T> {
        match *self {
            ComparatorOutcome::Applicable { value, .. } => Some(value),
            ComparatorOutcome::NotApplicable { .. } => None,
        }
    }
}

/// Comparator bound for `g - 1` curves whose complement is a union of holed
/// tori: `pi (g-1) (3 - pi (pi-2)(g-1) / (sum sqrt l_i)^2)`.
pub fn maldacena_comparator<T: Real>(genus: usize, lengths: &[T]) -> Result<ComparatorOutcome<T>> {
    const OP: &str = "maldacena_comparator";
    if genus < 2 {
        return Err(domain(OP, format!("genus must be at least 2, got {genus}")));
    }
    if lengths.len() != genus - 1 {
        return Err(domain(OP, format!("expected g - 1 = {} lengths, got {}", genus - 1, lengths.len())));
    }
    if lengths.iter().any(|&l| !(l > T::zero()) || !l.is_finite()) {
        return Err(domain(OP, "lengths must be positive and finite"));
    }
    let pi = T::PI();
    let pm2 = pi - T::lit(2.0);
    let g1 = T::count(genus - 1);
    let sqrt_sum = lengths.iter().fold(T::zero(), |a, &l| a + l.sqrt());
    let sq = sqrt_sum * sqrt_sum;
    let lhs = sq / pm2;
    let rhs = pi * g1;
    if lhs > rhs {
        return Ok(ComparatorOutcome::NotApplicable { lhs, rhs });
    }
    let negativity_bound = (pi * pm2 * g1 / T::lit(3.0)).sqrt();
    Ok(ComparatorOutcome::Applicable {
        value: pi * g1 * (T::lit(3.0) - pi * pm2 * g1 / sq),
        sqrt_sum,
        negativity_bound,
        negative: sqrt_sum <= negativity_bound,
    })
}

/// Common length below which `g - 1` equal curves make the comparator
/// negative: `pi (pi - 2) / (3 (g - 1))`. For genus 2 this is the
/// single-curve threshold `pi (pi - 2) / 3`.
pub fn comparator_equal_length_threshold<T: Real>(genus: usize) -> Result<T> {
    if genus < 2 {
        return Err(domain("comparator_equal_length_threshold", format!("genus must be at least 2, got {genus}")));
    }
    let pi = T::PI();
    Ok(pi * (pi - T::lit(2.0)) / (T::lit(3.0) * T::count(genus - 1)))
}
