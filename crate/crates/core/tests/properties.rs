//! Randomized properties over small instances.

use extremal::bits;
use extremal::colex::{cascade, colex_segment, kk_exact_shadow_bound};
use extremal::cyclic::{factorial_u64, lehmer_rank, lehmer_unrank, CyclicOrder};
use extremal::gbinom::{gbinom, solve_x};
use extremal::incmat::{inclusion_matrix, rank_of};
use extremal::kkbound::{lovasz_check, shadow_check};
use extremal::{gen, KGraph};
use proptest::prelude::*;

fn small_graph() -> impl Strategy<Value = KGraph> {
    (2usize..=8, 1usize..=3, any::<u64>()).prop_flat_map(|(n, r, seed)| {
        let r = r.min(n);
        let total = bits::k_subsets(n, r).len();
        (0..=total).prop_map(move |m| gen::random(n, r, m, seed).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cascade_round_trips(m in 0u128..1_000_000, r in 1usize..=6) {
        let c = cascade(m, r).unwrap();
        prop_assert!(c.is_well_formed());
        prop_assert_eq!(c.value(), m);
    }

    #[test]
    fn solve_x_inverts_gbinom(m in 1u64..10_000_000, r in 1usize..=6) {
        let x = solve_x(m, r).unwrap();
        prop_assert!(x >= r as f64 - 1.0);
        let rel = (gbinom(x, r) - m as f64).abs() / m as f64;
        prop_assert!(rel < 1e-9, "m={} r={} x={} rel={}", m, r, x, rel);
    }

    #[test]
    fn lehmer_round_trips(m in 1usize..=9, seed in any::<u64>()) {
        let rank = seed % factorial_u64(m);
        let perm = lehmer_unrank(rank, m);
        prop_assert_eq!(lehmer_rank(&perm), rank);
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (0..m).collect::<Vec<_>>());
    }

    #[test]
    fn canonicalization_is_idempotent(n in 3usize..=9, seed in any::<u64>(), i in 0usize..9) {
        let sigma = CyclicOrder::from_rank(seed % factorial_u64(n - 1), n);
        prop_assert_eq!(sigma.perm()[n - 1], n - 1);
        let again = CyclicOrder::new(sigma.perm().to_vec()).unwrap();
        prop_assert_eq!(&again, &sigma);
        for rot in sigma.rotations() {
            prop_assert_eq!(&CyclicOrder::new(rot).unwrap(), &sigma);
        }
        // swaps that never move n-1 are involutions
        let j = i % (n - 2);
        prop_assert_eq!(sigma.swap_adjacent(j).swap_adjacent(j), sigma);
    }

    #[test]
    fn inclusion_rows_have_binomial_sums(g in small_graph(), s in 0usize..=3) {
        prop_assume!(s <= g.r());
        let m = inclusion_matrix(&g, s).unwrap();
        let want = bits::k_subsets(g.r(), s).len() as i64;
        for row in m.dense() {
            prop_assert_eq!(row.iter().sum::<i64>(), want);
        }
        prop_assert!(rank_of(&g, s).unwrap() <= m.nonzero_columns());
    }

    #[test]
    fn shadow_never_beats_kruskal_katona(g in small_graph()) {
        for s in 0..=g.r() {
            let bound = kk_exact_shadow_bound(g.len() as u128, g.r(), s).unwrap();
            prop_assert!(g.s_shadow(s).unwrap().len() as u128 >= bound);
        }
        prop_assume!(g.r() >= 1 && !g.is_empty());
        prop_assert!(shadow_check(&g).unwrap().satisfied);
        prop_assert!(lovasz_check(&g).unwrap().satisfied);
    }

    #[test]
    fn colex_segments_attain_the_bound(r in 1usize..=4, m in 1u64..=200) {
        let m = if r == 1 { m.min(64) } else { m };
        let g = colex_segment(r, m).unwrap();
        prop_assert_eq!(g.len() as u64, m);
        for s in 0..=r {
            prop_assert_eq!(g.s_shadow(s).unwrap().len() as u128, kk_exact_shadow_bound(m as u128, r, s).unwrap());
        }
    }
}
