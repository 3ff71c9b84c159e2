//! Twist normalization towards the nearest symmetric surface.
//!
//! Full Dehn twists along pants curves are isometries of the Schottky
//! filling, so twists are first reduced modulo the curve length. Each reduced
//! twist is then moved to the nearest of `0` and `l/2` on the circle
//! `R / lZ`, which never costs more than `l/4`.

use serde::Serialize;

use crate::scalar::Real;
use crate::surface::FnCoordinates;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetrizationResult<T> {
    /// Twists reduced into `[0, l)`.
    pub reduced: FnCoordinates<T>,
    /// Twists in `{0, l/2}`.
    pub symmetric: FnCoordinates<T>,
    /// Signed earthquake distance from `reduced` to `symmetric`; left
    /// earthquakes are positive. `|delta_i| <= l_i / 4`.
    pub deltas: Vec<T>,
}

impl<T: Real> SymmetrizationResult<T> {
    /// `max_i |delta_i| / l_i`, at most `1/4`.
    pub fn max_delta_ratio(&self) -> T {
        self.deltas.iter().zip(self.symmetric.lengths()).map(|(&d, &l)| d.abs() / l).fold(T::zero(), T::max)
    }
}

/// Representative of `twist` modulo `length` in `[0, length)`.
pub fn reduce_twist<T: Real>(length: T, twist: T) -> T {
    // `%` is exact; only the shift of a negative remainder rounds.
    let mut r = twist % length;
    if r < T::zero() {
        r = r + length;
    }
    if r >= length || r == T::zero() {
        r = T::zero();
    }
    r
}

/// Nearest symmetric twist for a reduced twist `r` in `[0, l)`.
///
/// Returns the stored target (`0` or `l/2`) and the signed move. Ties at
/// `r = l/4` and `r = 3l/4` move in the negative direction.
pub fn nearest_symmetric_twist<T: Real>(length: T, reduced: T) -> (T, T) {
    let quarter = length / T::lit(4.0);
    let half = length / T::lit(2.0);
    if reduced <= quarter {
        (T::zero(), T::zero() - reduced)
    } else if reduced <= quarter * T::lit(3.0) {
        (half, half - reduced)
    } else {
        (T::zero(), length - reduced)
    }
}

pub fn reduce_full_twists<T: Real>(coords: &FnCoordinates<T>) -> FnCoordinates<T> {
    let twists = coords.lengths().iter().zip(coords.twists()).map(|(&l, &t)| reduce_twist(l, t)).collect();
    FnCoordinates::new(coords.lengths().to_vec(), twists).expect("reduction preserves validity")
}

pub fn symmetric_target<T: Real>(coords: &FnCoordinates<T>) -> SymmetrizationResult<T> {
    let reduced = reduce_full_twists(coords);
    let (targets, deltas): (Vec<T>, Vec<T>) =
        reduced.lengths().iter().zip(reduced.twists()).map(|(&l, &r)| nearest_symmetric_twist(l, r)).unzip();
    let symmetric = FnCoordinates::new(coords.lengths().to_vec(), targets).expect("symmetric twists are finite");
    SymmetrizationResult { reduced, symmetric, deltas }
}
