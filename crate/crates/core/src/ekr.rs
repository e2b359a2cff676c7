//! Intersecting families: the Erdős–Ko–Rado bound, the complement
//! construction, and near-star certificates.

use serde::{Deserialize, Serialize};

use crate::bits::{self, low_mask};
use crate::error::{domain, precondition, Result};
use crate::gbinom::binomial;
use crate::kgraph::KGraph;

const TOL: f64 = 1e-9;

/// Every two edges share a vertex.
pub fn is_intersecting(g: &KGraph) -> bool {
    let e = g.edges();
    e.iter().enumerate().all(|(i, &a)| e[i + 1..].iter().all(|&b| a & b != 0))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EkrReport {
    pub n: usize,
    pub r: usize,
    pub size: usize,
    /// `C(n-1, r-1)`.
    pub bound: u128,
    /// `n < 2r`: every `r`-graph is intersecting and the bound does not apply.
    pub trivial_regime: bool,
    pub within_bound: bool,
    pub at_equality: bool,
    /// A vertex lying in every edge, if any (lowest index).
    pub common_vertex: Option<usize>,
    /// At equality with `n > 2r`, a common vertex exists.
    pub uniqueness_holds: bool,
}

/// Checks `|G| <= C(n-1, r-1)` for an intersecting `G`, and at equality with
/// `n > 2r` that `G` is a star.
pub fn ekr_check(g: &KGraph) -> Result<EkrReport> {
    if !is_intersecting(g) {
        return precondition("family is not intersecting");
    }
    let (n, r) = (g.n(), g.r());
    if r == 0 {
        return domain("EKR needs r >= 1");
    }
    let bound = binomial(n as u64 - 1, r as u64 - 1);
    let common = g.edges().iter().fold(low_mask(n), |acc, &e| acc & e);
    let common_vertex = (!g.is_empty() && common != 0).then(|| common.trailing_zeros() as usize);
    let trivial_regime = n < 2 * r;
    let within_bound = trivial_regime || g.len() as u128 <= bound;
    let at_equality = !trivial_regime && g.len() as u128 == bound;
    Ok(EkrReport {
        n,
        r,
        size: g.len(),
        bound,
        trivial_regime,
        within_bound,
        at_equality,
        common_vertex,
        uniqueness_holds: !(at_equality && n > 2 * r) || common_vertex.is_some(),
    })
}

/// The complementary `r`-graph `H = K^r_n \ G` and the `(n-r)`-graph
/// `J = {V \ A : A ∈ G}`.
pub fn complement_pair(g: &KGraph) -> Result<(KGraph, KGraph)> {
    let (n, r) = (g.n(), g.r());
    let h = KGraph::complete(n, r)?.difference(g);
    let full = low_mask(n);
    let j = KGraph::new(n, n - r, g.edges().iter().map(|&e| full & !e))?;
    Ok((h, j))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplementReport {
    pub intersecting: bool,
    /// Every member of `J` spans a complete `r`-graph in `H`.
    pub all_span: bool,
    pub equivalence_holds: bool,
    pub j_size: usize,
    /// `K^r_{n-r}(H)`, computed when `G` is intersecting.
    pub h_clique_count: Option<u64>,
    pub clique_count_at_least_j: bool,
    /// Members of `J` that fail to span, as vertex lists.
    pub failing: Vec<Vec<usize>>,
}

/// `G` is intersecting iff every edge of `J` spans a `K^r_{n-r}` in `H`.
pub fn intersecting_iff_cliques(g: &KGraph) -> Result<ComplementReport> {
    let (n, r) = (g.n(), g.r());
    if r >= n {
        return domain("complement construction needs r < n");
    }
    let (h, j) = complement_pair(g)?;
    let failing: Vec<Vec<usize>> = j
        .edges()
        .iter()
        .filter(|&&rest| !bits::subsets_of_size(rest, r).iter().all(|&b| h.contains(b)))
        .map(|&rest| bits::vertices_of(rest))
        .collect();
    let intersecting = is_intersecting(g);
    let all_span = failing.is_empty();
    let h_clique_count = if intersecting && n - r >= r { Some(h.count_cliques(n - r)?) } else { None };
    Ok(ComplementReport {
        intersecting,
        all_span,
        equivalence_holds: intersecting == all_span,
        j_size: j.len(),
        clique_count_at_least_j: h_clique_count.is_none_or(|c| c >= j.len() as u64),
        h_clique_count,
        failing,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EkrCertificate {
    pub n: usize,
    pub r: usize,
    /// Vertex in the most edges (lowest index on ties).
    pub v: usize,
    pub covered: usize,
    pub uncovered: usize,
    /// `1 - |G| / C(n-1, r-1)`, clamped at 0.
    pub delta: f64,
    /// `25 n √δ C(n-1, r-1)`: bound reached through clique stability.
    pub bound_clique_route: f64,
    /// `δ r C(n-1, r-1)`: bound reached through Cayley-graph expansion.
    pub bound_cayley_route: f64,
    /// `δ < 10^{-3} n^{-4}`.
    pub clique_route_hypothesis: bool,
    pub clique_route_conclusion: bool,
    /// `δ < 1 / (2 r n^4)`.
    pub cayley_route_hypothesis: bool,
    pub cayley_route_conclusion: bool,
}

/// Finds the best center of an intersecting `G` with `r < n/2` and evaluates
/// both near-star conclusions.
pub fn stability_certificate(g: &KGraph) -> Result<EkrCertificate> {
    let (n, r) = (g.n(), g.r());
    if r == 0 || 2 * r >= n {
        return domain("EKR regime requires r < n/2");
    }
    if !is_intersecting(g) {
        return precondition("family is not intersecting");
    }
    let degrees = g.degrees();
    let (v, covered) = degrees
        .iter()
        .copied()
        .enumerate()
        .fold((0, 0), |best, (v, d)| if d > best.1 { (v, d) } else { best });
    let max = binomial(n as u64 - 1, r as u64 - 1) as f64;
    let delta = (1.0 - g.len() as f64 / max).max(0.0);
    let uncovered = g.len() - covered;
    let nf = n as f64;
    let bound_clique_route = 25.0 * nf * delta.sqrt() * max;
    let bound_cayley_route = delta * r as f64 * max;
    Ok(EkrCertificate {
        n,
        r,
        v,
        covered,
        uncovered,
        delta,
        bound_clique_route,
        bound_cayley_route,
        clique_route_hypothesis: delta < 1e-3 / nf.powi(4),
        clique_route_conclusion: uncovered as f64 <= bound_clique_route + TOL,
        cayley_route_hypothesis: delta < 1.0 / (2.0 * r as f64 * nf.powi(4)),
        cayley_route_conclusion: uncovered as f64 <= bound_cayley_route + TOL,
    })
}

/// All intersecting `r`-graphs on `n` vertices with exactly `size` edges.
///
/// Exhaustive branch and bound over the `C(n, r)` candidate sets (at most
/// 128). A branch is cut when its members plus a greedy partition of the
/// remaining candidates into pairwise-disjoint classes cannot reach `size`:
/// an intersecting family takes at most one set from each class.
pub fn intersecting_families_of_size(n: usize, r: usize, size: usize) -> Result<Vec<KGraph>> {
    let sets = bits::k_subsets(n, r);
    if sets.len() > 128 {
        return domain("exhaustive intersecting search is limited to C(n, r) <= 128");
    }
    let k = sets.len();
    // meets[i]: candidates intersecting set i
    let meets: Vec<u128> = sets
        .iter()
        .map(|&a| sets.iter().enumerate().filter(|(_, &b)| a & b != 0).fold(0u128, |m, (j, _)| m | 1 << j))
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let all = if k == 128 { u128::MAX } else { (1u128 << k) - 1 };
    search(&sets, &meets, &mut chosen, all, size, &mut out);
    Ok(out
        .into_iter()
        .map(|idx: Vec<usize>| KGraph::from_unsorted_unchecked(n, r, idx.into_iter().map(|i| sets[i]).collect()))
        .collect())
}

fn class_bound(sets: &[u64], meets: &[u128], mut cand: u128) -> usize {
    let mut classes = 0;
    while cand != 0 {
        classes += 1;
        // grow a class of pairwise-disjoint sets greedily
        let mut avail = cand;
        while avail != 0 {
            let i = avail.trailing_zeros() as usize;
            cand &= !(1u128 << i);
            avail &= !(1u128 << i) & !meets[i];
        }
        let _ = sets;
    }
    classes
}

fn search(sets: &[u64], meets: &[u128], chosen: &mut Vec<usize>, cand: u128, size: usize, out: &mut Vec<Vec<usize>>) {
    if chosen.len() == size {
        out.push(chosen.clone());
        return;
    }
    let need = size - chosen.len();
    if (cand.count_ones() as usize) < need || class_bound(sets, meets, cand) < need {
        return;
    }
    // branch on the lowest candidate: take it, or drop it for good
    let i = cand.trailing_zeros() as usize;
    let rest = cand & !(1u128 << i);
    chosen.push(i);
    search(sets, meets, chosen, rest & meets[i], size, out);
    chosen.pop();
    search(sets, meets, chosen, rest, size, out);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(n: usize, r: usize, c: usize) -> KGraph {
        KGraph::new(n, r, bits::k_subsets(n, r).into_iter().filter(|&e| e >> c & 1 == 1)).unwrap()
    }

    #[test]
    fn intersecting_examples() {
        assert!(is_intersecting(&star(6, 3, 2)));
        assert!(!is_intersecting(&KGraph::from_lists(4, 2, &[&[0, 1], &[2, 3]]).unwrap()));
        assert!(is_intersecting(&KGraph::from_lists(3, 2, &[&[0, 1], &[0, 2], &[1, 2]]).unwrap()));
    }

    #[test]
    fn ekr_examples() {
        let rep = ekr_check(&star(7, 3, 0)).unwrap();
        assert_eq!((rep.size, rep.bound), (15, 15));
        assert!(rep.at_equality && rep.common_vertex == Some(0) && rep.uniqueness_holds);
        let tri = KGraph::from_lists(5, 2, &[&[0, 1], &[0, 2], &[1, 2]]).unwrap();
        let rep = ekr_check(&tri).unwrap();
        assert_eq!(rep.bound, 4);
        assert!(rep.within_bound && !rep.at_equality);
        let bad = KGraph::from_lists(5, 2, &[&[0, 1], &[2, 3]]).unwrap();
        assert!(ekr_check(&bad).is_err());
        let small = KGraph::complete(5, 3).unwrap();
        assert!(ekr_check(&small).unwrap().trivial_regime);
    }

    #[test]
    fn maximum_intersecting_graphs_on_five_vertices() {
        // brute force over all 2^10 2-graphs on 5 vertices
        let pairs = bits::k_subsets(5, 2);
        let mut best = 0;
        for mask in 0u32..1 << 10 {
            let g = KGraph::new(5, 2, (0..10).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i])).unwrap();
            if is_intersecting(&g) {
                best = best.max(g.len());
            }
        }
        assert_eq!(best, 4);
        let fams = intersecting_families_of_size(5, 2, 4).unwrap();
        assert_eq!(fams.len(), 5);
        assert!(fams.iter().all(|f| ekr_check(f).unwrap().common_vertex.is_some()));
    }

    #[test]
    fn complement_pair_examples() {
        let (h, j) = complement_pair(&KGraph::complete(4, 2).unwrap()).unwrap();
        assert!(h.is_empty());
        assert_eq!(j, KGraph::complete(4, 2).unwrap());
        let (h, j) = complement_pair(&star(4, 2, 0)).unwrap();
        assert_eq!(h.edge_lists(), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(j.len(), 3);
        assert!(j.edges().iter().all(|&e| e & 1 == 0));
    }

    #[test]
    fn complement_equivalence() {
        let bad = KGraph::from_lists(5, 2, &[&[0, 1], &[2, 3]]).unwrap();
        let rep = intersecting_iff_cliques(&bad).unwrap();
        assert!(!rep.intersecting && !rep.all_span && rep.equivalence_holds);
        assert!(!rep.failing.is_empty());
        let empty = intersecting_iff_cliques(&KGraph::empty(5, 2).unwrap()).unwrap();
        assert!(empty.intersecting && empty.all_span);
    }

    #[test]
    fn certificate_examples() {
        let c = stability_certificate(&star(7, 3, 0)).unwrap();
        assert_eq!((c.v, c.uncovered, c.delta), (0, 0, 0.0));
        assert!(c.clique_route_hypothesis && c.clique_route_conclusion);
        assert!(c.cayley_route_hypothesis && c.cayley_route_conclusion);

        let removed = [0b1100001u64, 0b1010001, 0b0110001];
        let mut e: Vec<u64> = star(7, 3, 0).edges().iter().copied().filter(|x| !removed.contains(x)).collect();
        e.push(0b1110);
        let g = KGraph::new(7, 3, e).unwrap();
        assert!(is_intersecting(&g));
        assert_eq!(g.len(), 13);
        let c = stability_certificate(&g).unwrap();
        assert_eq!((c.v, c.uncovered), (0, 1));
        assert!(stability_certificate(&KGraph::complete(6, 3).unwrap()).is_err());
    }
}
