//! Bounded enumeration of closed geodesics by word length.
//!
//! Words are enumerated depth first in canonical form only (least rotation
//! of the word and of its inverse), which fixes the first letter as a
//! non-inverted generator no larger than any other generator in the word.
//! Proper powers are skipped. Elements with `|tr|` within numerical noise of
//! 2 are the identity (a relator consequence) and are skipped as well.
//!
//! Collar screening: a word containing the stable letter of curve `i`
//! crosses that curve, and any closed geodesic crossing a simple closed
//! geodesic of length `l` has length at least `2 arsinh(1 / sinh(l/2))`.
//! Stable letters whose collar bound already exceeds the cutoff are never
//! used.
//!
//! [`systole_check`] pushes the same idea further: every pants curve whose
//! collar is wider than 1 is cut, no geodesic of length at most 1 other than
//! the curve itself crosses it, and each remaining component is scanned on
//! its own.
//!
//! A word whose trace cannot be separated from 2 by the forward error bound
//! is counted as unresolved together with an upper bound on its length.
//! Short unresolved words are harmless: a closed geodesic of length below
//! `4 arsinh 1` is a power of a simple one, and a simple geodesic that short
//! cannot cross the collar of any pants curve, so it is a pants curve.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::word::{is_canonical, is_proper_power};
use super::{
    build_subsurface_holonomy, renormalize, GeneratorKind, HolonomyRepresentation, Letter, Mat2, Word,
    RENORMALIZE_EVERY, TRACE_TOLERANCE,
};
use crate::error::{domain, Error, Result};
use crate::hypmath::collar_halfwidth;
use crate::scalar::Real;
use crate::surface::{CurveClassification, FnCoordinates, PantsDecomposition, SystoleStatus};

pub const DEFAULT_SCAN_BUDGET: u64 = 10_000_000;
pub const DEFAULT_SCAN_DEPTH: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanConfig<T> {
    pub cutoff: T,
    pub max_word_len: usize,
    /// Maximum number of enumerated words.
    pub budget: u64,
    /// Worker threads; the result does not depend on this.
    pub workers: usize,
    pub collar_screening: bool,
}

impl<T: Real> ScanConfig<T> {
    pub fn new(cutoff: T, max_word_len: usize) -> Self {
        ScanConfig { cutoff, max_word_len, budget: DEFAULT_SCAN_BUDGET, workers: 1, collar_screening: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeodesicCandidate<T> {
    /// Index of the scanned representation (see [`systole_check`]); `0` for
    /// a single scan.
    pub component: usize,
    /// Canonical word.
    pub word: Word,
    pub length: T,
    /// True only for words of pants curves; simplicity is not tested otherwise.
    pub simple_hint: bool,
    pub pants_curve: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanOutcome<T> {
    /// Sorted by length, then by word.
    pub candidates: Vec<GeodesicCandidate<T>>,
    pub words_visited: u64,
    /// Words evaluating to the identity.
    pub trivial_words: u64,
    /// Words whose trace lies in the rounding-error band above 2 and that
    /// could be neither confirmed trivial nor measured.
    pub indeterminate_words: u64,
    /// Upper bound on the length of any geodesic represented by a trivial or
    /// indeterminate word (zero when there are none).
    pub unresolved_max_length: T,
    /// Curves whose stable letters were screened out by the collar bound.
    pub screened_curves: Vec<usize>,
}

/// Forward error bound on the trace of a product of `n` letter matrices
/// whose entrywise absolute product is `bound`; the extra terms cover
/// rounding in the letter matrices themselves.
pub(crate) fn trace_error<T: Real>(eps: T, n: usize, bound: &Mat2<T>) -> T {
    T::lit(16.0) * eps * T::count(n + 1) * (bound.a + bound.d)
}

struct Shard<T> {
    visited: u64,
    exhausted: bool,
    trivial: u64,
    indeterminate: u64,
    unresolved_max: T,
    found: Vec<(Vec<Letter>, T)>,
}

struct Dfs<'a, T> {
    letters: &'a [(Letter, Mat2<T>, Mat2<T>)],
    usable: &'a [bool],
    cutoff: T,
    max_len: usize,
    budget: u64,
    eps: T,
}

impl<'a, T: Real> Dfs<'a, T> {
    fn run(&self, prefix: &[Letter]) -> Result<Shard<T>> {
        let mut shard = Shard {
            visited: 0,
            exhausted: false,
            trivial: 0,
            indeterminate: 0,
            unresolved_max: T::zero(),
            found: Vec::new(),
        };
        let mut m = Mat2::identity();
        let mut bound = Mat2::identity();
        for (i, &l) in prefix.iter().enumerate() {
            let (_, lm, la) = self.letters[l.0 as usize];
            m = m * lm;
            bound = bound * la;
            if (i + 1).is_multiple_of(RENORMALIZE_EVERY) {
                m = renormalize(m)?;
            }
        }
        let mut word = prefix.to_vec();
        self.visit(&mut word, m, bound, &mut shard)?;
        Ok(shard)
    }

    /// `bound` is the product of the per-letter magnitude bounds, which
    /// dominates the accumulated rounding error.
    fn visit(&self, word: &mut Vec<Letter>, m: Mat2<T>, bound: Mat2<T>, shard: &mut Shard<T>) -> Result<()> {
        shard.visited += 1;
        if shard.visited > self.budget {
            shard.exhausted = true;
            return Ok(());
        }
        let first = word[0];
        let last = *word.last().expect("nonempty");
        if (word.len() == 1 || last != first.inverse()) && is_canonical(word) && !is_proper_power(word) {
            let t = m.trace().abs();
            let excess = t - T::lit(2.0);
            let err = trace_error(self.eps, word.len(), &bound);
            if excess <= T::tol(TRACE_TOLERANCE) || excess <= err {
                if excess <= T::tol(TRACE_TOLERANCE) {
                    shard.trivial += 1;
                } else {
                    shard.indeterminate += 1;
                }
                let bound = (T::one() + (excess.max(T::zero()) + err) / T::lit(2.0)).acosh() * T::lit(2.0);
                shard.unresolved_max = shard.unresolved_max.max(bound);
            } else {
                let len = T::lit(2.0) * (t / T::lit(2.0)).acosh();
                if len <= self.cutoff {
                    shard.found.push((word.clone(), len));
                }
            }
        }
        if word.len() == self.max_len {
            return Ok(());
        }
        let min_gen = first.generator();
        for &(l, lm, la) in self.letters {
            if l.generator() < min_gen || l == last.inverse() || !self.usable[l.generator()] {
                continue;
            }
            let depth = word.len() + 1;
            let mut next = m * lm;
            if depth.is_multiple_of(RENORMALIZE_EVERY) {
                next = renormalize(next)?;
            }
            word.push(l);
            self.visit(word, next, bound * la, shard)?;
            word.pop();
            if shard.exhausted {
                return Ok(());
            }
        }
        Ok(())
    }
}

/// All canonical cyclically reduced words of length at most
/// `max_word_len` whose geodesic has length at most `cutoff`.
pub fn short_geodesic_scan<T: Real>(rep: &HolonomyRepresentation<T>, cfg: &ScanConfig<T>) -> Result<ScanOutcome<T>> {
    const OP: &str = "short_geodesic_scan";
    if !(cfg.cutoff > T::zero()) {
        return Err(domain(OP, format!("cutoff must be positive, got {}", cfg.cutoff)));
    }
    if cfg.max_word_len == 0 {
        return Err(domain(OP, "max_word_len must be at least 1"));
    }
    let n = rep.num_generators();
    let mut usable = vec![true; n];
    let mut screened = Vec::new();
    if cfg.collar_screening {
        for (g, kind) in rep.generator_kinds().iter().enumerate() {
            if let GeneratorKind::StableLetter { curve } = *kind {
                let width = collar_halfwidth(rep.curve_lengths()[curve])?;
                if T::lit(2.0) * width > cfg.cutoff {
                    usable[g] = false;
                    screened.push(curve);
                }
            }
        }
    }
    let letters: Vec<(Letter, Mat2<T>, Mat2<T>)> = (0..2 * n as u16)
        .map(Letter)
        .map(|l| {
            let m = rep.letter_matrix(l);
            (l, m, rep.letter_bound(l))
        })
        .collect();
    let dfs = Dfs {
        letters: &letters,
        usable: &usable,
        cutoff: cfg.cutoff,
        max_len: cfg.max_word_len,
        budget: cfg.budget,
        eps: T::epsilon(),
    };

    // One shard per canonical first letter (always a non-inverted generator).
    let roots: Vec<Vec<Letter>> = (0..n).filter(|&g| usable[g]).map(|g| vec![Letter::gen(g)]).collect();
    let run = || roots.par_iter().map(|p| dfs.run(p)).collect::<Vec<_>>();
    let shards = if cfg.workers <= 1 {
        roots.iter().map(|p| dfs.run(p)).collect::<Vec<_>>()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| Error::Numerical { op: OP, msg: format!("thread pool: {e}") })?
            .install(run)
    };

    let mut visited = 0u64;
    let mut exhausted = false;
    let mut trivial = 0;
    let mut indeterminate = 0;
    let mut unresolved_max = T::zero();
    let mut merged: BTreeMap<Vec<Letter>, T> = BTreeMap::new();
    for s in shards {
        let s = s?;
        visited = visited.saturating_add(s.visited);
        exhausted |= s.exhausted;
        trivial += s.trivial;
        indeterminate += s.indeterminate;
        unresolved_max = unresolved_max.max(s.unresolved_max);
        merged.extend(s.found);
    }
    if exhausted || visited > cfg.budget {
        return Err(Error::BudgetExceeded { budget: cfg.budget, max_word_len: cfg.max_word_len });
    }

    let curve_keys: Vec<(Word, usize)> = rep
        .side_words()
        .iter()
        .enumerate()
        .flat_map(|(i, sides)| sides.iter().flatten().map(move |w| (w.canonical(), i)))
        .collect();
    let mut candidates: Vec<GeodesicCandidate<T>> = merged
        .into_iter()
        .map(|(w, rough)| {
            let word = Word(w);
            // Report the compensated evaluation, matching `word_length`.
            let length = super::word_length(rep, &word).unwrap_or(rough);
            let pants_curve = curve_keys.iter().find(|(k, _)| *k == word).map(|&(_, i)| i);
            GeodesicCandidate { component: 0, word, length, simple_hint: pants_curve.is_some(), pants_curve }
        })
        .collect();
    candidates.sort_by(|a, b| a.length.partial_cmp(&b.length).expect("finite").then_with(|| a.word.cmp(&b.word)));
    screened.sort_unstable();
    Ok(ScanOutcome {
        candidates,
        words_visited: visited,
        trivial_words: trivial,
        indeterminate_words: indeterminate,
        unresolved_max_length: unresolved_max,
        screened_curves: screened,
    })
}

/// Comparison of a scan at cutoff 1 with the declared short curves.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SystoleAssessment<T> {
    /// Nothing below 1 besides the short pants curves, and every trivial or
    /// indeterminate word provably harmless.
    pub clean: bool,
    /// Geodesics of length `<= 1` not matching any short pants curve.
    pub undeclared: Vec<GeodesicCandidate<T>>,
    /// Trivial or indeterminate words that could hide a geodesic other than
    /// a short pants curve.
    pub unresolved: bool,
    pub note: String,
}

/// Whether words whose geodesic is at most `bound` long can only be the
/// identity or powers of short pants curves.
///
/// By the collar lemma two intersecting closed geodesics of lengths `a`, `b`
/// satisfy `sinh(a/2) sinh(b/2) >= 1`, and a closed geodesic shorter than
/// `4 arsinh 1` is a power of a simple one. If no pants curve can be crossed,
/// the geodesic is a power of a pants curve, which is short when `bound <= 1`.
fn unresolved_is_harmless<T: Real>(bound: T, lengths: &[T]) -> bool {
    let half = T::lit(2.0);
    let max_len = lengths.iter().copied().fold(T::zero(), T::max);
    bound <= T::one() && (bound / half).sinh() * (max_len / half).sinh() < T::one()
}

/// Match scan candidates against the short pants curves. A candidate is
/// accounted for when it is a pants-curve word or its length equals a short
/// pants-curve length to `1e-8` relative.
pub fn assess_systole<T: Real>(coords: &FnCoordinates<T>, outcome: &ScanOutcome<T>) -> SystoleAssessment<T> {
    let one = T::one();
    let tol = T::tol(1e-8);
    let short: Vec<T> = coords.lengths().iter().copied().filter(|&l| l <= one).collect();
    let undeclared: Vec<GeodesicCandidate<T>> = outcome
        .candidates
        .iter()
        .filter(|c| c.length <= one)
        .filter(|c| {
            let by_word = c.pants_curve.is_some_and(|i| coords.lengths()[i] <= one);
            let by_len = short.iter().any(|&l| (c.length - l).abs() <= tol * l.max(one));
            !(by_word || by_len)
        })
        .cloned()
        .collect();
    let has_unresolved = outcome.trivial_words + outcome.indeterminate_words > 0;
    let unresolved = has_unresolved && !unresolved_is_harmless(outcome.unresolved_max_length, coords.lengths());
    let clean = undeclared.is_empty() && !unresolved;
    let note = if !undeclared.is_empty() {
        format!(
            "scan found {} word(s) of length <= 1 not among the short pants curves, shortest geodesic {} with length {}",
            undeclared.len(),
            undeclared[0].word,
            undeclared[0].length
        )
    } else if unresolved {
        format!(
            "{} word(s) could not be resolved numerically (length up to {})",
            outcome.trivial_words + outcome.indeterminate_words,
            outcome.unresolved_max_length
        )
    } else {
        format!("word scan found no undeclared geodesic of length <= 1 ({} words visited)", outcome.words_visited)
    };
    SystoleAssessment { clean, undeclared, unresolved, note }
}

/// Run the systole scan (cutoff 1) and update the classification status.
///
/// The surface is first cut along every pants curve whose collar is wider
/// than 1: no geodesic of length `<= 1` crosses such a curve, so each
/// component is scanned separately with its own, better conditioned,
/// holonomy. A clean scan upgrades the status to `certified_heuristic`; an
/// undeclared short geodesic sets it to `unknown`, overriding a user
/// assertion; unresolved words leave it unchanged.
pub fn systole_check<T: Real>(
    decomp: &PantsDecomposition,
    coords: &FnCoordinates<T>,
    classification: &CurveClassification,
    max_word_len: usize,
    budget: u64,
    workers: usize,
) -> Result<(CurveClassification, SystoleAssessment<T>, ScanOutcome<T>)> {
    let one = T::one();
    let cut = coords
        .lengths()
        .iter()
        .map(|&l| Ok(T::lit(2.0) * collar_halfwidth(l)? > one))
        .collect::<Result<Vec<bool>>>()?;
    let reps = build_subsurface_holonomy(decomp, coords, &cut)?;
    let mut merged = ScanOutcome {
        candidates: Vec::new(),
        words_visited: 0,
        trivial_words: 0,
        indeterminate_words: 0,
        unresolved_max_length: T::zero(),
        screened_curves: (0..cut.len()).filter(|&i| cut[i]).collect(),
    };
    for (component, rep) in reps.iter().enumerate() {
        let remaining = budget.saturating_sub(merged.words_visited);
        let cfg = ScanConfig { cutoff: one, max_word_len, budget: remaining, workers, collar_screening: true };
        let out = short_geodesic_scan(rep, &cfg).map_err(|e| match e {
            Error::BudgetExceeded { .. } => Error::BudgetExceeded { budget, max_word_len },
            e => e,
        })?;
        merged.words_visited += out.words_visited;
        merged.trivial_words += out.trivial_words;
        merged.indeterminate_words += out.indeterminate_words;
        merged.unresolved_max_length = merged.unresolved_max_length.max(out.unresolved_max_length);
        merged.candidates.extend(out.candidates.into_iter().map(|c| GeodesicCandidate { component, ..c }));
    }
    merged.candidates.sort_by(|a, b| {
        a.length
            .partial_cmp(&b.length)
            .expect("finite")
            .then(a.component.cmp(&b.component))
            .then_with(|| a.word.cmp(&b.word))
    });
    let assessment = assess_systole(coords, &merged);
    let mut updated = classification.clone();
    if assessment.clean {
        updated.systole = SystoleStatus::CertifiedHeuristic;
    } else if !assessment.undeclared.is_empty() {
        updated.systole = SystoleStatus::Unknown;
    }
    Ok((updated, assessment, merged))
}
