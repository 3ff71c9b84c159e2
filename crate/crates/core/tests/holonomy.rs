#![allow(clippy::excessive_precision)]

use proptest::prelude::*;
use rvbound::fuchsian::{
    build_holonomy, build_subsurface_holonomy, pants_components, short_geodesic_scan, systole_check, word_length,
    ScanConfig, Word,
};
use rvbound::surface::{classify_curves, FnCoordinates, PantsDecomposition, SystoleStatus};

fn theta(lengths: [f64; 3], twists: [f64; 3]) -> rvbound::HolonomyRepresentation64 {
    let c = FnCoordinates::new(lengths.to_vec(), twists.to_vec()).unwrap();
    build_holonomy(&PantsDecomposition::theta(), &c).unwrap()
}

fn scan(rep: &rvbound::HolonomyRepresentation64, cutoff: f64, depth: usize, workers: usize) -> rvbound::ScanOutcome64 {
    let cfg = ScanConfig { workers, ..ScanConfig::new(cutoff, depth) };
    short_geodesic_scan(rep, &cfg).unwrap()
}

// Twice the seam lengths of the right-angled hexagons for (0.5, 0.9, 1.2),
// computed to 50 digits by tests/oracle/reference_values.py.
const THETA_DUALS: [f64; 3] = [7.3525672000575875, 5.5106488359439809, 6.7267770647763867];

#[test]
fn theta_duals_match_hexagon_oracle() {
    let rep = theta([0.5, 0.9, 1.2], [0.0; 3]);
    let out = scan(&rep, 7.5, 4, 1);
    for dual in THETA_DUALS {
        let hit = out.candidates.iter().find(|c| (c.length - dual).abs() < 1e-9);
        assert!(hit.is_some(), "dual of length {dual} not found");
    }
}

#[test]
fn pants_curves_have_their_lengths() {
    let rep = theta([0.5, 0.9, 1.2], [0.3, -0.1, 2.0]);
    for (w, l) in rep.curve_words().iter().flatten().zip([0.5, 0.9, 1.2]) {
        assert!((word_length(&rep, w).unwrap() - l).abs() < 1e-10);
    }
}

#[test]
fn short_curves_are_found_by_their_words() {
    let rep = theta([0.5, 0.9, 1.2], [0.0; 3]);
    let out = scan(&rep, 1.0, 6, 1);
    for i in [0, 1] {
        let key = rep.curve_word(i).unwrap().canonical();
        assert!(out.candidates.iter().any(|c| c.word == key && c.pants_curve == Some(i)));
    }
    assert!(out.candidates.iter().all(|c| c.length <= 1.0));
}

#[test]
fn long_curves_leave_nothing_below_one() {
    let rep = theta([1.5, 1.6, 1.7], [0.0; 3]);
    let out = scan(&rep, 1.0, 8, 4);
    assert!(out.candidates.is_empty(), "{:?}", out.candidates);
    assert_eq!(out.indeterminate_words, 0);
}

#[test]
fn worker_count_does_not_change_results() {
    let d = PantsDecomposition::chain(3).unwrap();
    let c = FnCoordinates::new(vec![0.7, 1.1, 0.4, 2.0, 0.9, 1.3], vec![0.2, -0.5, 0.0, 1.0, 0.3, 0.05]).unwrap();
    let rep = build_holonomy(&d, &c).unwrap();
    let a = scan(&rep, 6.0, 5, 1);
    let b = scan(&rep, 6.0, 5, 4);
    assert_eq!(a, b);
}

#[test]
fn deeper_scans_only_add_candidates() {
    let rep = theta([0.8, 1.3, 2.1], [0.4, 0.0, -0.7]);
    let mut prev: Vec<Word> = Vec::new();
    for depth in 1..=6 {
        let out = scan(&rep, 8.0, depth, 2);
        let words: Vec<Word> = out.candidates.iter().map(|c| c.word.clone()).collect();
        assert!(prev.iter().all(|w| words.contains(w)), "depth {depth} lost a word");
        prev = words;
    }
}

#[test]
fn budget_is_enforced() {
    let rep = theta([1.0; 3], [0.0; 3]);
    let cfg = ScanConfig { budget: 50, ..ScanConfig::new(3.0, 6) };
    assert!(matches!(short_geodesic_scan(&rep, &cfg), Err(rvbound::Error::BudgetExceeded { budget: 50, .. })));
}

#[test]
fn collar_screening_keeps_every_short_length() {
    // Screening drops stable-letter words; the geodesics they represent
    // below the cutoff are still reached through other words.
    let rep = theta([0.3, 0.6, 2.5], [0.1, 0.2, 0.0]);
    let lengths = |out: &rvbound::ScanOutcome64| {
        let mut v: Vec<f64> = out.candidates.iter().map(|c| c.length).collect();
        v.dedup_by(|a, b| (*a - *b).abs() < 1e-6);
        v
    };
    let with = scan(&rep, 1.0, 6, 1);
    let cfg = ScanConfig { collar_screening: false, ..ScanConfig::new(1.0, 6) };
    let without = short_geodesic_scan(&rep, &cfg).unwrap();
    assert_eq!(with.screened_curves, vec![1, 2]);
    let (a, b) = (lengths(&with), lengths(&without));
    assert_eq!(a.len(), b.len());
    assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-6));
}

#[test]
fn both_sides_of_a_curve_are_recognised() {
    let rep = theta([0.3, 0.6, 2.5], [0.1, 0.2, 0.0]);
    let out = scan(&rep, 1.0, 1, 1);
    assert!(out.candidates.iter().all(|c| c.pants_curve.is_some() && c.simple_hint));
}

#[test]
fn components_follow_the_cut() {
    let d = PantsDecomposition::chain(3).unwrap();
    // Chain curves: 0 self-loop on P0, 1 = (P0, P1), 2 = (P1, P2), 3 = extra (P1, P2), 4 = (P2, P3), 5 self-loop on P3.
    let cut = [false, true, false, false, true, false];
    assert_eq!(pants_components(&d, &cut), vec![vec![0], vec![1, 2], vec![3]]);
    let c =
        FnCoordinates::<f64>::new(vec![0.7, 0.01, 1.1, 0.4, 0.002, 1.3], vec![0.2, 0.0, -0.5, 0.1, 0.0, 0.05]).unwrap();
    let reps = build_subsurface_holonomy(&d, &c, &cut).unwrap();
    // One-holed torus: 2 generators; four-holed sphere with a handle: 3 + 1.
    let gens: Vec<usize> = reps.iter().map(|r| r.num_generators()).collect();
    assert_eq!(gens, vec![3, 4, 3]);
    for rep in &reps {
        assert!(!rep.is_closed_surface());
        for (i, sides) in rep.side_words().iter().enumerate() {
            for w in sides.iter().flatten() {
                assert!((word_length(rep, w).unwrap() - c.lengths()[i]).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn pinched_surfaces_are_scanned_componentwise() {
    // Tiny curves make the closed-surface holonomy ill-conditioned; the
    // componentwise scan stays well conditioned and certifies.
    let d = PantsDecomposition::chain(3).unwrap();
    let c = FnCoordinates::<f64>::new(vec![1.4, 0.001, 1.6, 0.0005, 2.2, 1.3], vec![0.2, 0.0, 0.5, 0.0001, 1.1, 0.0])
        .unwrap();
    let class = classify_curves(&c, false);
    let (updated, assessment, outcome) = systole_check(&d, &c, &class, 6, 10_000_000, 2).unwrap();
    assert!(assessment.clean, "{}", assessment.note);
    assert_eq!(updated.systole, SystoleStatus::CertifiedHeuristic);
    assert!(outcome.candidates.iter().any(|c| (c.length - 0.001).abs() < 1e-9));
}

#[test]
fn undeclared_short_geodesic_downgrades_assertion() {
    // Long pants curves have short seams: with all lengths 6 the dual curves
    // through two seams have length 0.9309 (hexagon oracle).
    let d = PantsDecomposition::theta();
    let c = FnCoordinates::<f64>::new(vec![6.0; 3], vec![0.0; 3]).unwrap();
    let class = classify_curves(&c, true);
    assert_eq!(class.systole, SystoleStatus::AssertedByUser);
    let (updated, assessment, _) = systole_check(&d, &c, &class, 4, 10_000_000, 1).unwrap();
    assert!(assessment.undeclared.iter().any(|g| (g.length - 0.930860113304328).abs() < 1e-9));
    assert_eq!(updated.systole, SystoleStatus::Unknown);
}

fn lengths3() -> impl Strategy<Value = [f64; 3]> {
    [0.05f64..4.0, 0.05f64..4.0, 0.05f64..4.0]
}

fn twists3() -> impl Strategy<Value = [f64; 3]> {
    [-3.0f64..3.0, -3.0f64..3.0, -3.0f64..3.0]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inversion_and_rotation_preserve_length(l in lengths3(), t in twists3(), seed in 0usize..1000) {
        let rep = theta(l, t);
        let gens = rep.num_generators() as u16;
        // A pseudo-random cyclically reduced word of length 5.
        let mut letters = Vec::new();
        let mut s = seed;
        while letters.len() < 5 {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407) >> 7;
            let l = rvbound::fuchsian::Letter((s % (2 * gens as usize)) as u16);
            if letters.last().is_some_and(|&p: &rvbound::fuchsian::Letter| p == l.inverse()) {
                continue;
            }
            letters.push(l);
        }
        let w = Word(letters);
        prop_assume!(w.is_cyclically_reduced());
        let Ok(len) = word_length(&rep, &w) else { return Ok(()) };
        prop_assert!((word_length(&rep, &w.inverse()).unwrap() - len).abs() <= 1e-10 * len.max(1.0));
        for r in 1..w.len() {
            let mut v = w.letters().to_vec();
            v.rotate_left(r);
            prop_assert!((word_length(&rep, &Word(v)).unwrap() - len).abs() <= 1e-10 * len.max(1.0));
        }
    }

    #[test]
    fn full_twist_keeps_pants_traces(l in lengths3(), t in twists3(), i in 0usize..3) {
        let mut t2 = t;
        t2[i] += l[i];
        let a = theta(l, t);
        let b = theta(l, t2);
        for (wa, wb) in a.curve_words().iter().flatten().zip(b.curve_words().iter().flatten()) {
            let ta = a.trace(wa).unwrap().abs();
            let tb = b.trace(wb).unwrap().abs();
            prop_assert!((ta - tb).abs() < 1e-8 * ta);
        }
    }

    #[test]
    fn scan_just_above_a_curve_finds_it(l in lengths3(), t in twists3(), i in 0usize..3) {
        let rep = theta(l, t);
        let out = scan(&rep, l[i] + 1e-6, 3, 1);
        prop_assert!(out.candidates.iter().any(|c| (c.length - l[i]).abs() < 1e-8));
    }
}
