//! Instance families.

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bits::{self, low_mask};
use crate::colex;
use crate::error::{domain, Result};
use crate::kgraph::KGraph;

pub fn complete(n: usize, r: usize) -> Result<KGraph> {
    KGraph::complete(n, r)
}

/// The first `m` `r`-sets in colex order, on `n` vertices.
pub fn colex(n: usize, r: usize, m: u64) -> Result<KGraph> {
    let seg = colex::colex_segment(r, m)?;
    if seg.n() > n {
        return domain(format!("colex segment of {m} {r}-sets needs {} vertices", seg.n()));
    }
    seg.with_vertex_count(n)
}

/// All `r`-sets through `center`.
pub fn star(n: usize, r: usize, center: usize) -> Result<KGraph> {
    if center >= n || r == 0 {
        return domain("star needs r >= 1 and a center inside the vertex set");
    }
    KGraph::new(n, r, bits::k_subsets(n, r).into_iter().filter(|&e| e >> center & 1 == 1))
}

/// A star at `center` with up to `foreign` pairwise-intersecting edges
/// avoiding `center` added, every star edge disjoint from one of them
/// dropped, and `removed` further random star edges dropped. Always
/// intersecting.
pub fn star_perturbed(n: usize, r: usize, center: usize, removed: usize, foreign: usize, seed: u64) -> Result<KGraph> {
    let base = star(n, r, center)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let outside = low_mask(n) & !(1u64 << center);
    let mut others = bits::subsets_of_size(outside, r);
    others.shuffle(&mut rng);
    let mut added: Vec<u64> = Vec::new();
    for e in others {
        if added.len() >= foreign {
            break;
        }
        if added.iter().all(|&a| a & e != 0) {
            added.push(e);
        }
    }
    let mut kept: Vec<u64> = base.edges().iter().copied().filter(|&e| added.iter().all(|&a| a & e != 0)).collect();
    let drop = removed.min(kept.len());
    let mut gone: Vec<usize> = sample(&mut rng, kept.len(), drop).into_vec();
    gone.sort_unstable_by(|a, b| b.cmp(a));
    for i in gone {
        kept.swap_remove(i);
    }
    kept.extend(added);
    KGraph::new(n, r, kept)
}

/// The cycle `0 1 ... n-1` as a 2-graph.
pub fn cycle(n: usize) -> Result<KGraph> {
    if n < 3 {
        return domain("cycle needs n >= 3");
    }
    KGraph::new(n, 2, (0..n).map(|i| 1u64 << i | 1u64 << ((i + 1) % n)))
}

/// `m` distinct `r`-sets chosen uniformly.
pub fn random(n: usize, r: usize, m: usize, seed: u64) -> Result<KGraph> {
    let all = bits::k_subsets(n, r);
    if m > all.len() {
        return domain(format!("only {} {r}-sets on {n} vertices", all.len()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    KGraph::new(n, r, sample(&mut rng, all.len(), m).into_iter().map(|i| all[i]))
}

/// `K^r_n` minus `k` random edges.
pub fn complete_minus(n: usize, r: usize, k: usize, seed: u64) -> Result<KGraph> {
    let full = KGraph::complete(n, r)?;
    if k > full.len() {
        return domain("cannot remove more edges than exist");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gone = KGraph::new(n, r, sample(&mut rng, full.len(), k).into_iter().map(|i| full.edges()[i]))?;
    Ok(full.difference(&gone))
}

/// `K^3_{n-1}` on `0..n-1` together with the four triples joining the
/// 4-cycle `0 1 2 3` to the last vertex.
pub fn c4_extension(n: usize) -> Result<KGraph> {
    if n < 5 {
        return domain("C4 extension needs n >= 5");
    }
    let last = 1u64 << (n - 1);
    let mut edges = bits::k_subsets(n - 1, 3);
    edges.extend([0b0011, 0b0110, 0b1100, 0b1001].map(|p| p | last));
    KGraph::new(n, 3, edges)
}
