//! Marked pants decompositions, Fenchel-Nielsen coordinates and the
//! short/thick split of the pants curves.

mod format;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::scalar::Real;

pub use format::{parse_surface, to_text, ParseError, SurfaceDocument};

/// One boundary slot of a pair of pants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Slot {
    pub pants: usize,
    pub position: u8,
}

impl Slot {
    pub const fn new(pants: usize, position: u8) -> Self {
        Slot { pants, position }
    }
}

/// A pants curve: the two slots it glues, plus the seam marking bit.
///
/// With `marked == false` the twist is measured between the default seam
/// endpoints on both sides; `marked == true` moves the reference endpoint on
/// the second side to the antipodal seam foot (a shift by half the length).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CurvePairing {
    pub sides: [Slot; 2],
    pub marked: bool,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ValidationError {
    #[error("expected 3 * pants = 2 * curves, got {pants} pants and {curves} curves")]
    EulerCount { pants: usize, curves: usize },
    #[error("a closed surface of genus >= 2 needs at least 2 pants, got {pants}")]
    GenusTooSmall { pants: usize },
    #[error("declared genus {declared} but the decomposition has genus {computed}")]
    GenusMismatch { declared: usize, computed: usize },
    #[error("curve {curve}: slot {slot} does not exist")]
    SlotOutOfRange { curve: String, slot: String },
    #[error("slot {slot} is used by both curve {first} and curve {second}")]
    SlotReused { slot: String, first: String, second: String },
    #[error("slot {slot} is not paired by any curve")]
    UnpairedSlot { slot: String },
    #[error("pants graph is disconnected: {unreachable:?} not reachable from {root}")]
    Disconnected { root: String, unreachable: Vec<String> },
    #[error("duplicate {kind} id {id}")]
    DuplicateId { kind: &'static str, id: String },
    #[error("curve {curve}: length must be positive and finite, got {value}")]
    NonPositiveLength { curve: String, value: f64 },
    #[error("curve {curve}: twist must be finite, got {value}")]
    NonFiniteTwist { curve: String, value: f64 },
    #[error("expected {expected} coordinates, got {got}")]
    CoordinateCount { expected: usize, got: usize },
}

/// Combinatorial pants decomposition of a closed surface.
///
/// Immutable once built; every constructor validates the slot pairing,
/// the Euler count and connectivity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PantsDecomposition {
    pants_labels: Vec<String>,
    curve_labels: Vec<String>,
    curves: Vec<CurvePairing>,
}

impl PantsDecomposition {
    pub fn new(
        pants_labels: Vec<String>,
        curve_labels: Vec<String>,
        curves: Vec<CurvePairing>,
    ) -> Result<Self, ValidationError> {
        assert_eq!(curve_labels.len(), curves.len(), "one label per curve");
        let n_pants = pants_labels.len();
        if 3 * n_pants != 2 * curves.len() {
            return Err(ValidationError::EulerCount { pants: n_pants, curves: curves.len() });
        }
        if n_pants < 2 {
            return Err(ValidationError::GenusTooSmall { pants: n_pants });
        }
        for (kind, labels) in [("pants", &pants_labels), ("curve", &curve_labels)] {
            let mut seen = std::collections::HashSet::new();
            for l in labels.iter() {
                if !seen.insert(l) {
                    return Err(ValidationError::DuplicateId { kind, id: l.clone() });
                }
            }
        }

        let slot_name = |s: Slot| -> String {
            match pants_labels.get(s.pants) {
                Some(p) => format!("{p}.{}", s.position),
                None => format!("#{}.{}", s.pants, s.position),
            }
        };

        let mut owner: Vec<Option<usize>> = vec![None; 3 * n_pants];
        for (ci, c) in curves.iter().enumerate() {
            for s in c.sides {
                if s.pants >= n_pants || s.position > 2 {
                    return Err(ValidationError::SlotOutOfRange {
                        curve: curve_labels[ci].clone(),
                        slot: slot_name(s),
                    });
                }
                let idx = 3 * s.pants + s.position as usize;
                if let Some(prev) = owner[idx] {
                    return Err(ValidationError::SlotReused {
                        slot: slot_name(s),
                        first: curve_labels[prev].clone(),
                        second: curve_labels[ci].clone(),
                    });
                }
                owner[idx] = Some(ci);
            }
        }
        if let Some(idx) = owner.iter().position(Option::is_none) {
            return Err(ValidationError::UnpairedSlot { slot: slot_name(Slot::new(idx / 3, (idx % 3) as u8)) });
        }

        let mut reached = vec![false; n_pants];
        let mut stack = vec![0usize];
        reached[0] = true;
        while let Some(p) = stack.pop() {
            for c in &curves {
                let [a, b] = c.sides;
                for (from, to) in [(a, b), (b, a)] {
                    if from.pants == p && !reached[to.pants] {
                        reached[to.pants] = true;
                        stack.push(to.pants);
                    }
                }
            }
        }
        if reached.iter().any(|r| !r) {
            return Err(ValidationError::Disconnected {
                root: pants_labels[0].clone(),
                unreachable: reached.iter().zip(&pants_labels).filter(|(r, _)| !**r).map(|(_, l)| l.clone()).collect(),
            });
        }

        Ok(PantsDecomposition { pants_labels, curve_labels, curves })
    }

    /// Decomposition with default labels `P<i>` and `c<j>`, all curves unmarked.
    pub fn from_pairings(n_pants: usize, pairings: &[[Slot; 2]]) -> Result<Self, ValidationError> {
        Self::new(
            (0..n_pants).map(|i| format!("P{i}")).collect(),
            (0..pairings.len()).map(|j| format!("c{j}")).collect(),
            pairings.iter().map(|&sides| CurvePairing { sides, marked: false }).collect(),
        )
    }

    /// Genus-2 "theta" decomposition: curve `j` glues slot `j` of pants 0 to
    /// slot `j` of pants 1.
    pub fn theta() -> Self {
        let p = |j: u8| [Slot::new(0, j), Slot::new(1, j)];
        Self::from_pairings(2, &[p(0), p(1), p(2)]).expect("theta graph is valid")
    }

    /// Linear chain decomposition of genus `genus`.
    ///
    /// Pants `0` and `2g - 3` carry a self-glued curve; consecutive pants are
    /// joined by a chain curve, and the interior pants `(2j + 1, 2j + 2)` are
    /// joined by one extra curve. For genus 2 this is the "dumbbell".
    pub fn chain(genus: usize) -> Result<Self, ValidationError> {
        if genus < 2 {
            return Err(ValidationError::GenusTooSmall { pants: 2 * genus.saturating_sub(1) });
        }
        let n = 2 * genus - 2;
        let mut pairs = vec![[Slot::new(0, 0), Slot::new(0, 1)]];
        for i in 0..n - 1 {
            pairs.push([Slot::new(i, 2), Slot::new(i + 1, 0)]);
            if i % 2 == 1 {
                pairs.push([Slot::new(i, 1), Slot::new(i + 1, 1)]);
            }
        }
        pairs.push([Slot::new(n - 1, 1), Slot::new(n - 1, 2)]);
        Self::from_pairings(n, &pairs)
    }

    pub fn genus(&self) -> usize {
        self.curves.len() / 3 + 1
    }

    pub fn num_pants(&self) -> usize {
        self.pants_labels.len()
    }

    pub fn num_curves(&self) -> usize {
        self.curves.len()
    }

    pub fn curves(&self) -> &[CurvePairing] {
        &self.curves
    }

    pub fn pants_labels(&self) -> &[String] {
        &self.pants_labels
    }

    pub fn curve_labels(&self) -> &[String] {
        &self.curve_labels
    }

    /// Curve index and side (0 or 1) owning `slot`.
    pub fn slot_owner(&self, slot: Slot) -> Option<(usize, usize)> {
        self.curves
            .iter()
            .enumerate()
            .find_map(|(ci, c)| c.sides.iter().position(|&s| s == slot).map(|side| (ci, side)))
    }
}

/// Per-curve lengths and twists on a marked pants decomposition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FnCoordinates<T> {
    lengths: Vec<T>,
    twists: Vec<T>,
}

impl<T: Real> FnCoordinates<T> {
    pub fn new(lengths: Vec<T>, twists: Vec<T>) -> Result<Self, ValidationError> {
        if lengths.len() != twists.len() {
            return Err(ValidationError::CoordinateCount { expected: lengths.len(), got: twists.len() });
        }
        for (i, (&l, &t)) in lengths.iter().zip(&twists).enumerate() {
            if !(l > T::zero()) || !l.is_finite() {
                return Err(ValidationError::NonPositiveLength { curve: format!("#{i}"), value: l.to_f64_lossy() });
            }
            if !t.is_finite() {
                return Err(ValidationError::NonFiniteTwist { curve: format!("#{i}"), value: t.to_f64_lossy() });
            }
        }
        Ok(FnCoordinates { lengths, twists })
    }

    /// Coordinates checked against a decomposition (count only).
    pub fn for_decomposition(
        decomp: &PantsDecomposition,
        lengths: Vec<T>,
        twists: Vec<T>,
    ) -> Result<Self, ValidationError> {
        if lengths.len() != decomp.num_curves() {
            return Err(ValidationError::CoordinateCount { expected: decomp.num_curves(), got: lengths.len() });
        }
        Self::new(lengths, twists).map_err(|e| match e {
            ValidationError::NonPositiveLength { curve, value } => {
                ValidationError::NonPositiveLength { curve: relabel(decomp, &curve), value }
            }
            ValidationError::NonFiniteTwist { curve, value } => {
                ValidationError::NonFiniteTwist { curve: relabel(decomp, &curve), value }
            }
            other => other,
        })
    }

    pub fn lengths(&self) -> &[T] {
        &self.lengths
    }

    pub fn twists(&self) -> &[T] {
        &self.twists
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }
}

fn relabel(decomp: &PantsDecomposition, tag: &str) -> String {
    tag.strip_prefix('#')
        .and_then(|i| i.parse::<usize>().ok())
        .and_then(|i| decomp.curve_labels().get(i).cloned())
        .unwrap_or_else(|| tag.to_string())
}

/// Status of the hypothesis "no closed geodesic of length <= 1 other than the
/// short pants curves".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SystoleStatus {
    /// A bounded word scan found no other geodesic below 1. Not a proof.
    CertifiedHeuristic,
    AssertedByUser,
    /// Set by the Monte Carlo survey for its sampled designs.
    AssertedBySampler,
    Unknown,
}

impl SystoleStatus {
    /// Whether the status is strong enough to back a certificate.
    pub fn supports_certificate(self) -> bool {
        !matches!(self, SystoleStatus::Unknown)
    }
}

impl fmt::Display for SystoleStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystoleStatus::CertifiedHeuristic => "certified_heuristic",
            SystoleStatus::AssertedByUser => "asserted_by_user",
            SystoleStatus::AssertedBySampler => "asserted_by_sampler",
            SystoleStatus::Unknown => "unknown",
        })
    }
}

/// Split of the pants curves into short (`l <= 1`) and thick ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveClassification {
    pub short: Vec<usize>,
    pub thick: Vec<usize>,
    pub systole: SystoleStatus,
}

impl CurveClassification {
    pub fn k(&self) -> usize {
        self.short.len()
    }

    pub fn is_short(&self, curve: usize) -> bool {
        self.short.contains(&curve)
    }
}

/// Short curves are those with `l <= 1`; the boundary value is short.
pub fn classify_curves<T: Real>(coords: &FnCoordinates<T>, systole_asserted: bool) -> CurveClassification {
    let (short, thick) = (0..coords.len()).partition(|&i| coords.lengths()[i] <= T::one());
    CurveClassification {
        short,
        thick,
        systole: if systole_asserted { SystoleStatus::AssertedByUser } else { SystoleStatus::Unknown },
    }
}
