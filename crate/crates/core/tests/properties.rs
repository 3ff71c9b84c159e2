use proptest::prelude::*;
use rvbound::bounds::{
    bers_correction_aggregate, mainthm_bound, mainthm_bound_sharp, negativity_threshold, symmetric_vr_bound,
    threshold_denominator,
};
use rvbound::hypmath::*;
use rvbound::scalar::coth;
use rvbound::surface::{classify_curves, parse_surface, to_text, FnCoordinates, PantsDecomposition, SurfaceDocument};
use rvbound::symmetrize::{nearest_symmetric_twist, reduce_twist, symmetric_target};

fn genus_and_shorts() -> impl Strategy<Value = (usize, Vec<f64>)> {
    (2usize..=15).prop_flat_map(|g| (Just(g), prop::collection::vec(1e-4f64..=1.0, 0..=3 * g - 3)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn consistency_identity((g, ls) in genus_and_shorts()) {
        let c = universal_constants::<f64>();
        let main = mainthm_bound(g, &ls).unwrap();
        let sym = symmetric_vr_bound(&ls).unwrap();
        let corr = bers_correction_aggregate::<f64>(g, ls.len());
        let lhs = main - (sym + corr);
        let rhs = (9.0 - c.q / 4.0) * ls.len() as f64;
        let scale = 1f64.max(main.abs()).max(sym.abs()).max(corr.abs());
        prop_assert!((lhs - rhs).abs() <= 1e-9 * scale, "{lhs} vs {rhs}");
        prop_assert!(mainthm_bound_sharp(g, &ls).unwrap() <= main + 1e-9 * scale);
    }

    #[test]
    fn mainthm_increasing_in_each_length((g, ls) in genus_and_shorts(), i in any::<prop::sample::Index>(), f in 0.1f64..0.99) {
        prop_assume!(!ls.is_empty());
        let i = i.index(ls.len());
        let mut shorter = ls.clone();
        shorter[i] *= f;
        prop_assert!(mainthm_bound(g, &shorter).unwrap() < mainthm_bound(g, &ls).unwrap());
    }

    #[test]
    fn threshold_positive_and_increasing_in_k1(
        (g, k, k1) in (2usize..=20)
            .prop_flat_map(|g| (Just(g), 2..=3 * g - 3))
            .prop_flat_map(|(g, k)| (Just(g), Just(k), 1..k)),
    ) {
        let b = threshold_denominator::<f64>(g, k1, k).unwrap();
        prop_assert!(b > 2.0 * k as f64);
        let a = negativity_threshold::<f64>(g, k1, k).unwrap();
        let a_next = negativity_threshold::<f64>(g, k1 + 1, k).unwrap();
        prop_assert!(a > 0.0 && a < a_next);
    }

    #[test]
    fn symmetrization_targets(l in 1e-3f64..50.0, t in -500.0f64..500.0) {
        let r = reduce_twist(l, t);
        prop_assert!((0.0..l).contains(&r));
        let (target, delta) = nearest_symmetric_twist(l, r);
        prop_assert!(target == 0.0 || target == l / 2.0);
        prop_assert!(delta.abs() <= l / 4.0);
        let circle = |a: f64, b: f64| { let d = (a - b).rem_euclid(l); d.min(l - d) };
        let best = circle(r, 0.0).min(circle(r, l / 2.0));
        prop_assert!((circle(r, target) - best).abs() <= 1e-12 * l);
    }

    #[test]
    fn symmetrization_idempotent(ls in prop::collection::vec(1e-3f64..20.0, 1..9), ts in prop::collection::vec(-40.0f64..40.0, 9)) {
        let n = ls.len();
        let c = FnCoordinates::new(ls, ts[..n].to_vec()).unwrap();
        let once = symmetric_target(&c);
        let twice = symmetric_target(&once.symmetric);
        prop_assert_eq!(&twice.symmetric, &once.symmetric);
        prop_assert!(twice.deltas.iter().all(|&d| d == 0.0));
        prop_assert!(once.max_delta_ratio() <= 0.25);
    }

    #[test]
    fn profile_round_trip(y in 1e-9f64..1.76) {
        let x = collar_profile_inverse(y).unwrap();
        prop_assert!((collar_profile(x).unwrap() - y).abs() < 1e-10);
    }

    #[test]
    fn injectivity_at_collar_boundary(l in 1e-3f64..20.0) {
        let w = collar_halfwidth(l).unwrap();
        prop_assert!((tube_injectivity(l, w).unwrap() - l / 2.0).abs() < 1e-12);
    }

    #[test]
    fn surface_text_round_trip(
        g in 2usize..6,
        ls in prop::collection::vec(1e-6f64..1e3, 12),
        ts in prop::collection::vec(-1e3f64..1e3, 12),
        marks in prop::collection::vec(any::<bool>(), 12),
        assert_systole in any::<bool>(),
    ) {
        let d = PantsDecomposition::chain(g).unwrap();
        let n = d.num_curves();
        let mut text = String::new();
        text.push_str(&format!("genus {g}\n"));
        for p in d.pants_labels() {
            text.push_str(&format!("pants {p}\n"));
        }
        for (i, c) in d.curves().iter().enumerate() {
            let side = |s: rvbound::surface::Slot| format!("P{}.{}", s.pants, s.position);
            text.push_str(&format!("curve c{i} {} {} twist={:?} len={:?}{}\n", side(c.sides[0]), side(c.sides[1]),
                ts[i], ls[i], if marks[i] { " mark=1" } else { "" }));
        }
        if assert_systole {
            text.push_str("assert systole_certified\n");
        }
        let doc: SurfaceDocument<f64> = parse_surface(&text).unwrap();
        prop_assert_eq!(doc.coordinates.lengths(), &ls[..n]);
        prop_assert_eq!(doc.coordinates.twists(), &ts[..n]);
        let again: SurfaceDocument<f64> = parse_surface(&to_text(&doc)).unwrap();
        prop_assert_eq!(&again, &doc);
        prop_assert_eq!(to_text(&again), to_text(&doc));
    }

    #[test]
    fn classification_is_permutation_equivariant(ls in prop::collection::vec(0.01f64..3.0, 3..12), seed in any::<u64>()) {
        let n = ls.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let a = classify_curves(&FnCoordinates::new(ls.clone(), vec![0.0; n]).unwrap(), false);
        let permuted: Vec<f64> = perm.iter().map(|&i| ls[i]).collect();
        let b = classify_curves(&FnCoordinates::new(permuted, vec![0.0; n]).unwrap(), false);
        let mut mapped: Vec<usize> = b.short.iter().map(|&j| perm[j]).collect();
        mapped.sort_unstable();
        prop_assert_eq!(&mapped, &a.short);
        prop_assert_eq!(a.k() + a.thick.len(), n);
    }
}

#[test]
fn aggregate_matches_expanded_constant() {
    // 27 C pi = 81 coth^2(1/4) pi.
    let c = universal_constants::<f64>().c;
    let lhs = 27.0 * c * std::f64::consts::PI;
    let rhs = 81.0 * coth(0.25f64).powi(2) * std::f64::consts::PI;
    assert!((lhs - rhs).abs() <= 1e-13 * rhs);
}

#[test]
fn denominator_exceeds_two_k_for_all_small_genera() {
    for g in 2..=20 {
        for k in 1..=3 * g - 3 {
            for k1 in 1..=k {
                assert!(threshold_denominator::<f64>(g, k1, k).unwrap() > 2.0 * k as f64, "g={g} k1={k1} k={k}");
            }
        }
    }
}
