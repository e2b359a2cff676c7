//! Library results against independent brute-force and closed-form oracles.

use std::collections::HashSet;

use extremal::bits::{self, k_subsets};
use extremal::cayley::{build_cayley, complete_component, second_eigenvalue};
use extremal::colex::colex_segment;
use extremal::cyclic::{all_orders, incomplete_count_check, restrict};
use extremal::ekr::{intersecting_families_of_size, intersecting_iff_cliques, is_intersecting};
use extremal::enumerate::GraphSpace;
use extremal::gbinom::binomial;
use extremal::incmat::{inclusion_matrix, kk_alg_probe, rank_of};
use extremal::rank::{rank_bareiss, rank_exact};
use extremal::{gen, KGraph};
use nalgebra::SymmetricEigen;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        let inv = BigRational::one() / a[rank][c].clone();
        for i in 0..a.len() {
            if i != rank && !a[i][c].is_zero() {
                let f = a[i][c].clone() * inv.clone();
                let pivot = a[rank].clone();
                for (x, y) in a[i][c..].iter_mut().zip(&pivot[c..]) {
                    *x -= f.clone() * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn brute_cliques(g: &KGraph, m: usize) -> u64 {
    k_subsets(g.n(), m)
        .into_iter()
        .filter(|&set| bits::subsets_of_size(set, g.r()).into_iter().all(|e| g.contains(e)))
        .count() as u64
}

#[test]
fn bareiss_matches_rational_elimination() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..300 {
        let (rows, cols) = (rng.gen_range(0..9), rng.gen_range(1..9));
        let low_rank = rng.gen_bool(0.5);
        let mut m: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        if low_rank && rows > 2 {
            // make the last row a combination of the first two
            let (a, b) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
            m[rows - 1] = (0..cols).map(|j| a * m[0][j] + b * m[1][j]).collect();
        }
        let exact = rank_exact(&m, 5).unwrap();
        assert_eq!(exact.rank, rational_rank(&m), "{m:?}");
        // the certificate selects a nonsingular square submatrix
        let sub: Vec<Vec<i64>> =
            exact.pivot_rows.iter().map(|&i| exact.pivot_cols.iter().map(|&j| m[i][j]).collect()).collect();
        assert_eq!(rational_rank(&sub), exact.rank);
    }
}

#[test]
fn bareiss_handles_large_pivots() {
    // Hilbert-like integer matrix with entry growth
    let m: Vec<Vec<i64>> = (0..10).map(|i| (0..10).map(|j| 1_000_003 / (i + j + 1) as i64).collect()).collect();
    assert_eq!(rank_bareiss(&m).0, rational_rank(&m));
}

#[test]
fn clique_counts_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let n = rng.gen_range(3..=9);
        let r = rng.gen_range(1..=3.min(n));
        let total = binomial(n as u64, r as u64) as usize;
        let g = gen::random(n, r, rng.gen_range(0..=total), rng.gen()).unwrap();
        for m in r..=n {
            assert_eq!(g.count_cliques(m).unwrap(), brute_cliques(&g, m));
        }
    }
}

#[test]
fn shadows_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let n = rng.gen_range(2..=9);
        let r = rng.gen_range(1..=4.min(n));
        let total = binomial(n as u64, r as u64) as usize;
        let g = gen::random(n, r, rng.gen_range(0..=total), rng.gen()).unwrap();
        for s in 0..=r {
            let truth: HashSet<u64> = g.edges().iter().flat_map(|&e| bits::subsets_of_size(e, s)).collect();
            assert_eq!(g.s_shadow(s).unwrap().len(), truth.len());
            assert_eq!(inclusion_matrix(&g, s).unwrap().nonzero_columns(), truth.len());
            assert!(rank_of(&g, s).unwrap() <= truth.len());
        }
    }
}

#[test]
fn colex_segment_ranks_match_rational_elimination() {
    for r in 1..=3usize {
        for m in 1..=binomial(7, r as u64) as u64 {
            let g = colex_segment(r, m).unwrap();
            for s in 0..=r {
                let mat = inclusion_matrix(&g, s).unwrap();
                let rank = rank_of(&g, s).unwrap();
                assert_eq!(rank, rational_rank(&mat.dense()), "r={r} m={m} s={s}");
                assert!(rank <= (m as usize).min(g.s_shadow(s).unwrap().len()));
            }
        }
    }
}

#[test]
fn iteration_matches_dense_spectrum() {
    for n in 3..=7 {
        let c = build_cayley(n).unwrap();
        let eig = SymmetricEigen::new(c.dense());
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert!((vals[0] - (n - 2) as f64).abs() < 1e-9);
        let dense_l2 = if vals.len() > 1 { vals[1] } else { vals[0] };
        let rep = second_eigenvalue(&c).unwrap();
        assert!((rep.lambda2 - dense_l2).abs() < 1e-9, "n={n}: {} vs {dense_l2}", rep.lambda2);
    }
}

#[test]
fn largest_cayley_graph_matches_gap_formula() {
    let rep = second_eigenvalue(&build_cayley(8).unwrap()).unwrap();
    assert!(rep.agrees, "{rep:?}");
    assert!(rep.alpha_exceeds_inverse_cube);
}

#[test]
fn intersecting_search_matches_brute_force() {
    for &(n, r) in &[(5usize, 2usize), (6, 2), (6, 1), (7, 3)] {
        let space = GraphSpace::new(n, r);
        let Ok(space) = space else { continue };
        let mut by_size = vec![0usize; space.slots().len() + 1];
        for g in space.iter() {
            if is_intersecting(&g) {
                by_size[g.len()] += 1;
            }
        }
        for (size, &count) in by_size.iter().enumerate() {
            assert_eq!(intersecting_families_of_size(n, r, size).unwrap().len(), count, "n={n} r={r} size={size}");
        }
    }
}

#[test]
fn complement_equivalence_over_all_small_graphs() {
    let space = GraphSpace::new(6, 2).unwrap();
    for g in space.iter() {
        let rep = intersecting_iff_cliques(&g).unwrap();
        assert!(rep.equivalence_holds && rep.clique_count_at_least_j);
        assert_eq!(rep.intersecting, is_intersecting(&g));
    }
}

#[test]
fn incomplete_orders_are_few() {
    for n in 5..=7usize {
        for r in 2..n {
            if 2 * r >= n {
                break;
            }
            for seed in 0..6u64 {
                let g = gen::star_perturbed(n, r, seed as usize % n, seed as usize % 3, (seed % 3) as usize, seed).unwrap();
                let rep = incomplete_count_check(&g).unwrap();
                assert!(rep.holds, "{rep:?}");
            }
        }
    }
}

#[test]
fn component_chain_end_to_end() {
    for n in 5..=7usize {
        for r in 2..n {
            if 2 * r >= n {
                break;
            }
            for removed in 0..3 {
                let g = gen::star_perturbed(n, r, 1, removed, 0, removed as u64).unwrap();
                let rep = complete_component(&g).unwrap();
                assert!(rep.incomplete_bound_holds && rep.largest_bound_holds, "{rep:?}");
                assert!(rep.single_center && rep.center == Some(1), "{rep:?}");
                assert!(rep.center_degree_bound_holds, "{rep:?}");
            }
        }
    }
}

#[test]
fn restriction_counts_intervals_directly() {
    let g = gen::star_perturbed(7, 3, 2, 1, 1, 4).unwrap();
    for sigma in all_orders(7) {
        let p = sigma.perm();
        let direct = (0..7)
            .map(|x| (0..3).fold(0u64, |m, j| m | 1 << p[(x + j) % 7]))
            .filter(|&s| g.contains(s))
            .count();
        assert_eq!(restrict(&g, &sigma).unwrap().0.len(), direct);
    }
}

#[test]
fn algebraic_probe_table() {
    let rep = kk_alg_probe(2, 1, 1..=15, 6, 0, 0).unwrap();
    assert!(rep.exhaustive);
    let total: usize = rep.rows.iter().map(|r| r.instances).sum();
    assert_eq!(total, (1usize << 15) - 1);
    // the 4-cycle is among the violations at size 4
    assert!(rep.rows[3].violations > 0);
    let sampled = kk_alg_probe(3, 2, 10..=20, 7, 20, 9).unwrap();
    assert!(!sampled.exhaustive);
    assert!(sampled.rows.iter().all(|r| r.instances == 20));
}

#[test]
fn c4_extension_deficit_is_recorded() {
    let g = gen::c4_extension(6).unwrap();
    assert_eq!(g.len(), 14);
    let c = extremal::incmat::algebraic_check(&g, 2).unwrap();
    assert!(c.rank as f64 <= 15.0);
    assert!(!c.integral_x);
}
