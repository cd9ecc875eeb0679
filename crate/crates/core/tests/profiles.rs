mod common;

use common::{c3_brute, choose, edge_brute, profile4_brute};
use proptest::prelude::*;
use tourprof_core::profiles::{
    classify4, edge_stats, moments, profile3, profile4, sample_profile4, verify_identities, x_cdf, FourType, IncrementalProfile,
};
use tourprof_core::tournament::{cyclic, random_tournament, read_trn, transitive, write_trn};
use tourprof_core::Tournament;

fn arb_tournament(lo: usize, hi: usize) -> impl Strategy<Value = Tournament> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut it = bits.into_iter();
            Tournament::from_fn(n, |_, _| it.next().unwrap())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn counts_match_enumeration(t in arb_tournament(4, 10)) {
        let p3 = profile3(&t).unwrap();
        let p4 = profile4(&t).unwrap();
        prop_assert_eq!(p3.c3, c3_brute(&t));
        prop_assert_eq!([p4.t4, p4.c4, p4.w, p4.l], profile4_brute(&t));
    }

    #[test]
    fn edge_counts_match_enumeration(t in arb_tournament(3, 12)) {
        let st = edge_stats(&t).unwrap();
        prop_assert_eq!(st.edges.len() as u64, choose(t.n() as u64, 2));
        for e in &st.edges {
            prop_assert!(t.beats(e.tail, e.head));
            prop_assert_eq!((e.cyc, e.thru, e.dom_out, e.dom_in), edge_brute(&t, e.tail, e.head));
        }
    }

    #[test]
    fn identities_hold(t in arb_tournament(4, 24)) {
        let r = verify_identities(&t).unwrap();
        prop_assert!(r.all_hold(), "{:?}", r.violations().collect::<Vec<_>>());
    }

    #[test]
    fn reversal_swaps_sink_and_source(t in arb_tournament(4, 14)) {
        let a = profile4(&t).unwrap();
        let b = profile4(&t.reversed()).unwrap();
        prop_assert_eq!((a.t4, a.c4, a.w, a.l), (b.t4, b.c4, b.l, b.w));
    }

    #[test]
    fn relabeling_preserves_profile(t in arb_tournament(4, 14), seed in any::<u64>()) {
        let n = t.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut x = seed;
        for i in (1..n).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (x >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(profile4(&t).unwrap().densities(), profile4(&t.relabel(&perm)).unwrap().densities());
    }

    #[test]
    fn trn_round_trip(t in arb_tournament(1, 80)) {
        let mut buf = Vec::new();
        write_trn(&t, &mut buf).unwrap();
        prop_assert_eq!(read_trn(&buf[..]).unwrap(), t);
    }

    #[test]
    fn incremental_tracks_recount(t in arb_tournament(4, 20), flips in proptest::collection::vec((0usize..20, 1usize..20), 1..40)) {
        let n = t.n();
        let mut state = IncrementalProfile::new(t).unwrap();
        for (u, d) in flips {
            let (u, v) = (u % n, (u % n + d % (n - 1) + 1) % n);
            state.flip(u, v).unwrap();
            let fresh = profile4(state.tournament()).unwrap();
            prop_assert_eq!(state.profile4(), fresh);
            prop_assert_eq!(state.c3_count(), c3_brute(state.tournament()));
        }
        state.audit().unwrap();
    }
}

#[test]
fn classify_by_scores() {
    assert_eq!(classify4(&transitive(4)).unwrap(), FourType::T4);
    let c4 = Tournament::from_matrix(4, &[vec![0, 1, 0, 1], vec![0, 0, 1, 1], vec![1, 0, 0, 1], vec![0, 0, 0, 0]]).unwrap();
    assert_eq!(classify4(&c4).unwrap(), FourType::W);
    assert_eq!(classify4(&c4.reversed()).unwrap(), FourType::L);
    assert!(classify4(&transitive(5)).is_err());
}

#[test]
fn small_orders_rejected() {
    assert!(profile4(&transitive(3)).is_err());
    assert!(moments(&transitive(3)).is_err());
}

#[test]
fn exact_moments_consistent() {
    for t in [random_tournament(40, 1), cyclic(31).unwrap(), transitive(25)] {
        let m = moments(&t).unwrap();
        let e = m.exact.clone().unwrap();
        assert_eq!(e.e_z2, e.z2_expansion());
        assert!((m.e_z2 - (1.0 + 4.0 * m.e_x - 4.0 * m.e_y + 4.0 * m.e_x2 - 8.0 * m.e_xy + 4.0 * m.e_y2)).abs() < 1e-12);
        // X concentrates on the c3 density for every arc: E[X] = c3.
        let c3 = profile3(&t).unwrap().c3_density();
        assert!((m.e_x - c3).abs() < 1e-12);
    }
}

#[test]
fn x_cdf_cyclic_tournament() {
    // In cyclic(23) an arc of length d closes exactly d cyclic triangles,
    // and each length 1..=11 is shared by the same number of arcs.
    let t = cyclic(23).unwrap();
    let grid = [0.0, 0.1, 0.25, 0.3, 0.5, 0.52, 0.6];
    let phi = x_cdf(&t, &grid).unwrap();
    for (x, got) in grid.iter().zip(phi) {
        let expected = (1..=11).filter(|d| *d as f64 / 21.0 >= *x).count() as f64 / 11.0;
        assert!((got - expected).abs() < 1e-12, "x = {x}: {got} vs {expected}");
    }
    assert!(x_cdf(&t, &[0.5, 0.1]).is_err());
}

#[test]
fn sampling_agrees_with_exact() {
    let t = random_tournament(200, 9);
    let exact = profile4(&t).unwrap().densities();
    let est = sample_profile4(&t, 50_000, 4).unwrap();
    for (ty, d) in FourType::ALL.iter().zip(exact) {
        let e = est.get(*ty);
        assert!((e.mean - d).abs() <= 4.0 * e.stderr + 1e-9, "{ty:?}: {} vs {d}", e.mean);
    }
    assert_eq!(sample_profile4(&t, 1000, 4).unwrap(), sample_profile4(&t, 1000, 4).unwrap());
}

#[test]
fn x_cdf_imbalanced_cyclic_blowup() {
    use tourprof_core::tournament::{blowup, BlowupSpec, WeightVector};
    // Parts a, a, c with a > 1/3 > c. A cross arc has X equal to the weight of
    // the third part and an inner arc about a quarter of its own part, so only
    // cross arcs touching the small part clear 1/3: φ(1/3 + δ) → 4ac.
    let eps = 0.05;
    let (a, c) = (1.0 / 3.0 + eps, 1.0 / 3.0 - 2.0 * eps);
    let spec = BlowupSpec::new(cyclic(3).unwrap(), WeightVector::new(vec![a, a, c]).unwrap()).unwrap();
    let t = blowup(&spec, 600, 12).unwrap();
    let phi = x_cdf(&t, &[1.0 / 3.0 + 0.005]).unwrap()[0];
    assert!((phi - 4.0 * a * c).abs() < 0.01, "phi = {phi}");
}
