use proptest::prelude::*;
use scrollfam::families::*;

fn scroll_type() -> impl Strategy<Value = ScrollType> {
    (3u32..=14)
        .prop_flat_map(|n| (Just(n), 1..n))
        .prop_flat_map(|(n, d)| {
            let all = multi_indices(n - d + 1, d);
            (Just(n), prop::sample::select(all))
        })
        .prop_map(|(n, a)| ScrollType::new(a, n).unwrap())
}

#[test]
fn multi_indices_exhaustive_small() {
    assert_eq!(multi_indices(3, 2), vec![vec![0, 3], vec![1, 2]]);
    assert_eq!(multi_indices(4, 3), vec![vec![0, 0, 4], vec![0, 1, 3], vec![0, 2, 2], vec![1, 1, 2]]);
}

proptest! {
    #[test]
    fn type_invariants(t in scroll_type()) {
        prop_assert_eq!(t.a().iter().sum::<u32>() + t.d(), t.n() + 1);
        prop_assert!(t.a().windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(t.degree(), t.n() - t.d() + 1);
    }

    #[test]
    fn balanced_stratum_is_dense(t in scroll_type()) {
        let all = dim_all_scrolls(t.n(), t.d());
        prop_assert!(dim_stratum(&t) <= all);
        prop_assert_eq!(dim_stratum(&t) == all, t.is_balanced());
        prop_assert_eq!(ScrollType::balanced(t.n(), t.d()).unwrap().is_balanced(), true);
    }

    #[test]
    fn curve_count_matches_coefficients(t in scroll_type(), k in 1u32..6) {
        if let FamilyDim::Dim(v) = dim_curves_in_scroll(&t, k).unwrap() {
            prop_assert!(k <= t.d() && degrees_nonnegative(&t, k));
            prop_assert_eq!(coefficient_count(&t, k), v);
        }
    }

    #[test]
    fn half_dimensional_forms_agree(m in 2u32..=7, k in 1u32..5, pick in any::<prop::sample::Index>()) {
        let n = 2 * m;
        let all = multi_indices(n - m + 1, m);
        let t = ScrollType::new(pick.get(&all).clone(), n).unwrap();
        prop_assert_eq!(dim_scrolls_with_curve(&t, k).unwrap(), dim_scrolls_with_curve_expanded(&t, k).unwrap());
        if k == 1 {
            prop_assert_eq!(dim_scrolls_with_curve(&t, 1).unwrap(), FamilyDim::Dim(dim_scrolls_through_frame(&t)));
        }
    }

    #[test]
    fn genus_bounds(p in 2u32..200) {
        let g = gonality_bound(p).unwrap();
        prop_assert_eq!(g, (p as i64 + 3) / 2);
        prop_assert_eq!(clifford_bound(p).unwrap(), g - 2);
    }
}
