//! Property-based invariants over random graphs and patterns.

use proptest::prelude::*;

use redblue::counting::{
    count_copies, count_rbrb_antipodal, goodman_identity_check, pair_stats, walk_profile,
};
use redblue::graph::{assess_balance, construct_quasirandom, ColouredCompleteGraph};
use redblue::pattern::named_four_vertex_patterns;
use redblue::relaxation::{vector_from_graph_rational, DegreeCodegreeVector};

fn arb_graph() -> impl Strategy<Value = ColouredCompleteGraph> {
    (4usize..=11, 0u64..10_000, 1u32..=9)
        .prop_map(|(n, seed, dec)| construct_quasirandom(n, dec as f64 / 10.0, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn degrees_always_sum_to_n_minus_1(g in arb_graph()) {
        for x in 0..g.n() {
            prop_assert_eq!(g.red_degree(x) + g.blue_degree(x), g.n() - 1);
        }
    }

    #[test]
    fn text_format_round_trips(g in arb_graph()) {
        let parsed: ColouredCompleteGraph = g.to_string().parse().unwrap();
        prop_assert_eq!(parsed, g);
    }

    #[test]
    fn swap_involution_and_count_symmetry(g in arb_graph()) {
        prop_assert_eq!(g.swap_colours().swap_colours(), g.clone());
        for (_, h) in named_four_vertex_patterns() {
            prop_assert_eq!(
                count_copies(&h, &g.swap_colours()),
                count_copies(&h.swap_colours(), &g)
            );
        }
    }

    #[test]
    fn flip_is_involution(g in arb_graph(), x in 0usize..11, y in 0usize..11) {
        let (x, y) = (x % g.n(), y % g.n());
        if x != y {
            let f = g.flip_edge(x, y).unwrap();
            prop_assert_eq!(f.flip_edge(x, y).unwrap(), g);
        }
    }

    #[test]
    fn goodman_identity_everywhere(g in arb_graph()) {
        let (lhs, rhs) = goodman_identity_check(&g);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn swap_preserves_balance(g in arb_graph()) {
        prop_assert_eq!(
            assess_balance(&g).epsilon,
            assess_balance(&g.swap_colours()).epsilon
        );
    }

    #[test]
    fn pair_walk_cap_and_goodman_path_bound(g in arb_graph()) {
        let n = g.n();
        let stats = pair_stats(&g);
        let mut path_total = 0u128;
        for st in &stats.pairs {
            prop_assert!(st.w2_xy + st.w2_yx <= n - 2);
            path_total += (st.w2_xy + st.w2_yx) as u128;
        }
        // Σ_{x≠y} w₂ᴿ(x,y) is at most twice the Goodman maximum
        prop_assert!(path_total <= 2 * redblue::formulas::goodman_max(n as u128));
    }

    #[test]
    fn walk_totals_respect_bound(g in arb_graph()) {
        let n = g.n() as f64;
        let p = walk_profile(&g, 4).unwrap();
        for t in 1..=4usize {
            let bound = 2.0 * n * ((n - 1.0) / 2.0).powi(t as i32);
            prop_assert!((p.totals[t] as f64) <= bound * (1.0 + 1e-12));
        }
    }

    #[test]
    fn antipodal_counter_matches_oracle(g in arb_graph()) {
        prop_assert_eq!(
            count_rbrb_antipodal(&g),
            count_copies(&redblue::pattern::rbrb_c4(), &g)
        );
    }

    #[test]
    fn graph_vectors_lie_in_feasible_set(g in arb_graph()) {
        let v: DegreeCodegreeVector<_> = vector_from_graph_rational(&g);
        prop_assert!(v.p1_ok());
        prop_assert!(v.is_graphical());
        prop_assert!(num::Zero::is_zero(&v.p3_residual()));
    }
}
