//! Colex initial segments and cascade representations.

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::{domain, Result};
use crate::gbinom::binomial;
use crate::kgraph::{KGraph, MAX_VERTICES};

/// The cascade form `m = C(n_r, r) + C(n_{r-1}, r-1) + ... + C(n_j, j)`
/// with `n_r > n_{r-1} > ... > n_j >= j >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cascade {
    /// `(n_i, i)` pairs, highest `i` first.
    pub terms: Vec<(u64, usize)>,
}

impl Cascade {
    /// The represented number.
    pub fn value(&self) -> u128 {
        self.terms.iter().map(|&(n, i)| binomial(n, i as u64)).sum()
    }

    /// Checks the strict decrease and `n_j >= j` conditions.
    pub fn is_well_formed(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0 > w[1].0 && w[0].1 == w[1].1 + 1)
            && self.terms.iter().all(|&(n, i)| i >= 1 && n >= i as u64)
    }
}

/// Greedy cascade decomposition of `m` at level `r`. `m = 0` gives an empty cascade.
pub fn cascade(m: u128, r: usize) -> Result<Cascade> {
    if r == 0 {
        return domain("cascade needs r >= 1");
    }
    let mut rest = m;
    let mut terms = Vec::new();
    for i in (1..=r).rev() {
        if rest == 0 {
            break;
        }
        // largest n with C(n, i) <= rest; C(i, i) = 1 <= rest always
        let k = i as u64;
        let (mut lo, mut hi) = (k, k + 1);
        while binomial(hi, k) <= rest {
            lo = hi;
            hi *= 2;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if binomial(mid, k) <= rest {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        rest -= binomial(lo, k);
        terms.push((lo, i));
    }
    Ok(Cascade { terms })
}

/// The Kruskal–Katona minimum size of the `s`-shadow of an `r`-graph with `m` edges:
/// `Σ C(n_i, i - r + s)` over the cascade of `m`, with `C(·, negative) = 0`.
pub fn kk_exact_shadow_bound(m: u128, r: usize, s: usize) -> Result<u128> {
    if s > r {
        return domain(format!("need s <= r, got s = {s}, r = {r}"));
    }
    if r == 0 {
        return Ok(m.min(1));
    }
    let c = cascade(m, r)?;
    Ok(c.terms
        .iter()
        .filter(|&&(_, i)| i + s >= r)
        .map(|&(n, i)| binomial(n, (i + s - r) as u64))
        .sum())
}

/// The first `m` `r`-subsets of the naturals in colex order, on the smallest
/// vertex universe that contains them.
pub fn colex_segment(r: usize, m: u64) -> Result<KGraph> {
    if r > MAX_VERTICES {
        return domain("uniformity exceeds the 64-vertex universe");
    }
    if (binomial(MAX_VERTICES as u64, r as u64)) < m as u128 {
        return domain(format!("colex segment of {m} {r}-sets needs more than 64 vertices"));
    }
    let mut edges = Vec::with_capacity(m as usize);
    let mut x = bits::low_mask(r);
    for k in 0..m {
        edges.push(x);
        if k + 1 < m {
            x = if r == 0 {
                unreachable!("only one 0-set")
            } else {
                bits::next_same_popcount(x).expect("checked against C(64, r)")
            };
        }
    }
    let n = edges.last().map_or(r, |&e| (64 - e.leading_zeros() as usize).max(r));
    Ok(KGraph::from_sorted_unchecked(n, r, edges))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cascade_examples() {
        assert_eq!(cascade(5, 2).unwrap().terms, vec![(3, 2), (2, 1)]);
        assert_eq!(cascade(35, 3).unwrap().terms, vec![(7, 3)]);
        assert_eq!(cascade(17, 3).unwrap().terms, vec![(5, 3), (4, 2), (1, 1)]);
        assert!(cascade(0, 3).unwrap().terms.is_empty());
        assert!(cascade(4, 0).is_err());
    }

    #[test]
    fn cascade_is_unique_by_exhaustion() {
        // enumerate every well-formed cascade with small entries and check the
        // greedy decomposition is the only one hitting its value
        for r in 1..=4usize {
            let mut reps: std::collections::HashMap<u128, Vec<Vec<(u64, usize)>>> = Default::default();
            fn walk(
                i: usize,
                below: u64,
                acc: &mut Vec<(u64, usize)>,
                out: &mut std::collections::HashMap<u128, Vec<Vec<(u64, usize)>>>,
            ) {
                if !acc.is_empty() {
                    let c = Cascade { terms: acc.clone() };
                    out.entry(c.value()).or_default().push(acc.clone());
                }
                if i == 0 {
                    return;
                }
                for n in (i as u64)..below {
                    acc.push((n, i));
                    walk(i - 1, n, acc, out);
                    acc.pop();
                }
            }
            walk(r, if r == 1 { 102 } else { 16 }, &mut Vec::new(), &mut reps);
            for m in 1..=100u128 {
                let greedy = cascade(m, r).unwrap();
                assert_eq!(greedy.value(), m);
                assert!(greedy.is_well_formed());
                let all = &reps[&m];
                assert_eq!(all.len(), 1, "m = {m}, r = {r}: {all:?}");
                assert_eq!(all[0], greedy.terms);
            }
        }
    }

    #[test]
    fn segment_examples() {
        let s = colex_segment(2, 5).unwrap();
        assert_eq!(s.edge_lists(), vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3]]);
        assert_eq!(colex_segment(3, 10).unwrap(), KGraph::complete(5, 3).unwrap());
        let seg = colex_segment(3, 17).unwrap();
        assert_eq!(seg.n(), 6);
        assert_eq!(seg.shadow().unwrap().len(), 15);
        // the 17th set reaches vertex 5, so all six singletons appear
        assert_eq!(seg.s_shadow(1).unwrap().len(), 6);
        assert_eq!(colex_segment(2, 0).unwrap().len(), 0);
    }

    #[test]
    fn segment_matches_cascade_construction() {
        // the segment is C([n_r], r) ∪ ({n_r} + C([n_{r-1}], r-1)) ∪ ...
        // (0-indexed, so "adding n_i + 1" is adding vertex n_i)
        for r in 1..=4 {
            for m in 0..=if r == 1 { 60 } else { 120u64 } {
                let c = cascade(m as u128, r).unwrap();
                let mut edges = Vec::new();
                let mut prefix = 0u64;
                for &(n, i) in &c.terms {
                    for e in bits::k_subsets(n as usize, i) {
                        edges.push(e | prefix);
                    }
                    prefix |= 1u64 << n;
                }
                edges.sort_unstable();
                assert_eq!(colex_segment(r, m).unwrap().edges(), &edges[..], "r={r} m={m}");
            }
        }
    }

    #[test]
    fn exact_bound_examples() {
        assert_eq!(kk_exact_shadow_bound(17, 3, 2).unwrap(), 15);
        assert_eq!(kk_exact_shadow_bound(20, 3, 2).unwrap(), 15);
        assert_eq!(kk_exact_shadow_bound(4, 2, 1).unwrap(), 4);
        assert_eq!(kk_exact_shadow_bound(17, 3, 3).unwrap(), 17);
        assert!(kk_exact_shadow_bound(4, 2, 3).is_err());
    }

    #[test]
    fn exact_bound_is_exhaustive_minimum_for_four_edges() {
        // all 2-graphs with 4 edges on 8 vertices
        let pairs = bits::k_subsets(8, 2);
        let mut best = usize::MAX;
        let n = pairs.len();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let sup = pairs[a] | pairs[b] | pairs[c] | pairs[d];
                        best = best.min(sup.count_ones() as usize);
                    }
                }
            }
        }
        assert_eq!(best as u128, kk_exact_shadow_bound(4, 2, 1).unwrap());
    }
}
