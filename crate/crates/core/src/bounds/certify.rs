//! Assembly of every bound for one surface into a [`BoundReport`].

use serde::Serialize;

use super::{
    mainthm_bound, mainthm_bound_sharp, maldacena_comparator, negativity_threshold, symmetric_vr_bound,
    symmetric_vr_bound_bc, symmetrization_correction, ComparatorOutcome,
};
use crate::error::{domain, Error, Result};
use crate::hypmath::{bers_length_bound, universal_constants, UniversalConstants};
use crate::scalar::Real;
use crate::surface::{CurveClassification, FnCoordinates, PantsDecomposition, SystoleStatus};
use crate::symmetrize::symmetric_target;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    NegativeCertified,
    NotCertified,
}

/// Which bound produced a negative certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertifiedBy {
    MainTheorem,
    Comparator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Holds by construction of the input.
    Certified,
    /// Supported by a bounded numerical search; not a proof.
    CertifiedHeuristic,
    AssertedByUser,
    AssertedBySampler,
    /// Evaluated with an estimate in place of an unknown quantity.
    Conditional,
    Unknown,
    NotEvaluated,
}

impl From<SystoleStatus> for Provenance {
    fn from(s: SystoleStatus) -> Self {
        match s {
            SystoleStatus::CertifiedHeuristic => Provenance::CertifiedHeuristic,
            SystoleStatus::AssertedByUser => Provenance::AssertedByUser,
            SystoleStatus::AssertedBySampler => Provenance::AssertedBySampler,
            SystoleStatus::Unknown => Provenance::Unknown,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypothesisRecord {
    pub name: String,
    pub status: Provenance,
    pub note: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdEntry<T> {
    pub k1: usize,
    pub k: usize,
    pub threshold: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetrizationSummary<T> {
    pub symmetric_twists: Vec<T>,
    pub deltas: Vec<T>,
    pub max_delta_ratio: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparatorReport<T> {
    pub curves: Vec<usize>,
    pub outcome: ComparatorOutcome<T>,
}

#[derive(Debug, Clone, Default)]
pub struct CertifyOptions<T> {
    /// The user asserts that the short curves cut the surface into holed tori,
    /// which the comparator bound requires.
    pub comparator_asserted: bool,
    /// User-supplied half-length of the shortest compressible geodesic.
    pub rho_asserted: Option<T>,
    /// Free-form note attached to the systole hypothesis (scan summary).
    pub systole_note: Option<String>,
}

/// Every evaluated bound for one surface, with the hypotheses behind it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport<T> {
    pub genus: usize,
    pub k: usize,
    pub k1: usize,
    pub short_curves: Vec<usize>,
    pub thick_curves: Vec<usize>,
    /// Right-hand side of the main bound; certifies negativity when `< 0`.
    pub mainthm_value: T,
    /// Same with the per-curve constant `Q/4` instead of `9`.
    pub mainthm_sharp_value: T,
    /// Bound at the nearest symmetric surface.
    pub symmetric_value: T,
    /// Symmetrization cost with thick lengths capped at the Bers bound.
    pub correction_value: T,
    /// Symmetrization cost with every thick length replaced by the Bers bound.
    pub correction_bers_value: T,
    pub comparator_value: Option<T>,
    pub comparator: Option<ComparatorReport<T>>,
    /// Fixed-curve bound evaluated at `rho`; see the `rho` hypothesis record.
    pub fixed_curve_value: Option<T>,
    pub rho: T,
    pub thresholds: Vec<ThresholdEntry<T>>,
    pub bers_bound: T,
    pub symmetrization: SymmetrizationSummary<T>,
    pub verdict: Verdict,
    pub certified_by: Option<CertifiedBy>,
    pub hypothesis_provenance: Vec<HypothesisRecord>,
    pub constants: UniversalConstants<T>,
    pub notes: Vec<String>,
}

fn record(name: &str, status: Provenance, note: impl Into<String>) -> HypothesisRecord {
    HypothesisRecord { name: name.to_string(), status, note: note.into() }
}

/// Evaluate every bound for `coords` on `decomp`.
pub fn certify<T: Real>(
    decomp: &PantsDecomposition,
    coords: &FnCoordinates<T>,
    classification: &CurveClassification,
    options: &CertifyOptions<T>,
) -> Result<BoundReport<T>> {
    const OP: &str = "certify";
    let genus = decomp.genus();
    if coords.len() != decomp.num_curves() {
        return Err(domain(OP, format!("{} coordinates for {} curves", coords.len(), decomp.num_curves())));
    }
    let lengths = coords.lengths();
    let mut short: Vec<usize> = classification.short.clone();
    short.sort_unstable();
    let mut thick: Vec<usize> = classification.thick.clone();
    thick.sort_unstable();
    if short.len() + thick.len() != coords.len() || short.iter().any(|i| thick.contains(i)) {
        return Err(domain(OP, "classification must partition the curves"));
    }
    if let Some(&i) = thick.iter().find(|&&i| lengths[i] <= T::one()) {
        return Err(domain(OP, format!("curve {} has length <= 1 but is classified thick", decomp.curve_labels()[i])));
    }

    let short_lengths: Vec<T> = short.iter().map(|&i| lengths[i]).collect();
    let thick_lengths: Vec<T> = thick.iter().map(|&i| lengths[i]).collect();
    let k = short.len();
    let bers = bers_length_bound::<T>(genus)?;

    let sym = symmetric_target(coords);
    let symmetrization = SymmetrizationSummary {
        symmetric_twists: sym.symmetric.twists().to_vec(),
        deltas: sym.deltas.clone(),
        max_delta_ratio: sym.max_delta_ratio(),
    };
    if symmetrization.max_delta_ratio > T::lit(0.25) {
        return Err(Error::Invariant { op: OP, msg: "symmetrization moved a twist by more than l/4".into() });
    }

    let symmetric_value = symmetric_vr_bound(&short_lengths)?;
    let capped: Vec<T> = thick_lengths.iter().map(|&l| l.min(bers)).collect();
    let correction_value = symmetrization_correction(&short_lengths, &capped)?;
    let correction_bers_value = symmetrization_correction(&short_lengths, &vec![bers; thick.len()])?;
    let mainthm_value = mainthm_bound(genus, &short_lengths)?;
    let mainthm_sharp_value = mainthm_bound_sharp(genus, &short_lengths)?;

    let mut sorted = short_lengths.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("lengths are finite"));
    let mut thresholds = Vec::with_capacity(k);
    let mut k1 = 0;
    for j in 1..=k {
        let a = negativity_threshold::<T>(genus, j, k)?;
        if sorted[j - 1] < a {
            k1 = j;
        }
        thresholds.push(ThresholdEntry { k1: j, k, threshold: a });
    }

    let mut notes = Vec::new();
    let mut prov = Vec::new();
    prov.push(record(
        "short_curves_disjoint_simple",
        Provenance::Certified,
        "short curves are pants curves of the input decomposition",
    ));
    let systole_note = options.systole_note.clone().unwrap_or_else(|| match classification.systole {
        SystoleStatus::Unknown => "not asserted and not scanned".to_string(),
        s => s.to_string(),
    });
    prov.push(record("no_other_geodesic_of_length_at_most_1", classification.systole.into(), systole_note));
    let over_bers: Vec<&str> =
        thick.iter().filter(|&&i| lengths[i] > bers).map(|&i| decomp.curve_labels()[i].as_str()).collect();
    prov.push(if over_bers.is_empty() {
        record(
            "thick_curves_within_bers_bound",
            Provenance::Certified,
            format!("all thick lengths <= {bers}; the bound applies to the input decomposition"),
        )
    } else {
        record(
            "thick_curves_within_bers_bound",
            Provenance::Conditional,
            format!(
                "curves {over_bers:?} exceed the Bers bound {bers}; the bound applies to a Bers \
                 decomposition containing the short curves, not to the input one"
            ),
        )
    });
    prov.push(record(
        "twists_within_quarter_length",
        Provenance::Certified,
        format!("after full-twist reduction max |dt|/l = {}", symmetrization.max_delta_ratio),
    ));

    let (comparator, comparator_value) = if options.comparator_asserted {
        if k == genus - 1 {
            let outcome = maldacena_comparator(genus, &short_lengths)?;
            prov.push(record(
                "comparator_holed_tori_configuration",
                Provenance::AssertedByUser,
                "complement of the short curves asserted to be a union of holed tori; not verified",
            ));
            (Some(ComparatorReport { curves: short.clone(), outcome }), outcome.value())
        } else {
            prov.push(record(
                "comparator_holed_tori_configuration",
                Provenance::NotEvaluated,
                format!("comparator needs exactly g - 1 = {} short curves, found {k}", genus - 1),
            ));
            (None, None)
        }
    } else {
        prov.push(record("comparator_holed_tori_configuration", Provenance::NotEvaluated, "not requested"));
        (None, None)
    };

    let min_len = lengths.iter().copied().fold(T::infinity(), T::min);
    let (rho, rho_status, rho_note) = match options.rho_asserted {
        Some(r) => (r, Provenance::AssertedByUser, "user-supplied".to_string()),
        None => (
            min_len / T::lit(2.0),
            Provenance::Conditional,
            "half the shortest pants-curve length; an upper bound on rho, so the fixed-curve bound is \
             conditional"
                .to_string(),
        ),
    };
    prov.push(record("rho_shortest_compressible_half_length", rho_status, rho_note));
    let fixed_curve_value = if k > 0 { Some(symmetric_vr_bound_bc(&short_lengths, rho)?) } else { None };

    let systole_ok = classification.systole.supports_certificate();
    let certified_by = if mainthm_value < T::zero() && systole_ok {
        Some(CertifiedBy::MainTheorem)
    } else if matches!(comparator, Some(ComparatorReport { outcome: ComparatorOutcome::Applicable { value, .. }, .. }) if value < T::zero())
    {
        Some(CertifiedBy::Comparator)
    } else {
        None
    };
    let verdict = if certified_by.is_some() { Verdict::NegativeCertified } else { Verdict::NotCertified };

    if k == 0 {
        notes.push("k = 0: no pants curve of length <= 1, so the main bound is positive".to_string());
    }
    if mainthm_value < T::zero() && !systole_ok {
        notes.push("main bound is negative but the systole hypothesis is unknown".to_string());
    }
    if k1 > 0 {
        notes.push(format!("{k1} short curve(s) lie below the negativity threshold for k = {k}"));
    }

    Ok(BoundReport {
        genus,
        k,
        k1,
        short_curves: short,
        thick_curves: thick,
        mainthm_value,
        mainthm_sharp_value,
        symmetric_value,
        correction_value,
        correction_bers_value,
        comparator_value,
        comparator,
        fixed_curve_value,
        rho,
        thresholds,
        bers_bound: bers,
        symmetrization,
        verdict,
        certified_by,
        hypothesis_provenance: prov,
        constants: universal_constants(),
        notes,
    })
}
