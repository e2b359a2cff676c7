//! Uniform set families on at most 64 vertices.
//!
//! A [`KGraph`] stores its edges as bitmasks in increasing numeric order.
//! For masks of a fixed popcount, numeric order is exactly colex order, so the
//! edge list is always in canonical colex form and membership is a binary
//! search.

use serde::{Deserialize, Serialize};

use crate::bits::{self, iter_bits, low_mask};
use crate::error::{domain, Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// An `r`-uniform hypergraph on the vertex set `{0, .., n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KGraph {
    n: usize,
    r: usize,
    edges: Vec<u64>,
}

impl KGraph {
    /// Builds a graph from edge masks, sorting them into colex order.
    ///
    /// Fails if an edge has the wrong size, uses a vertex `>= n`, or repeats.
    pub fn new(n: usize, r: usize, edges: impl IntoIterator<Item = u64>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!("n = {n} exceeds {MAX_VERTICES}")));
        }
        if r > n {
            return Err(Error::InvalidGraph(format!("uniformity r = {r} exceeds n = {n}")));
        }
        let universe = low_mask(n);
        let mut edges: Vec<u64> = edges.into_iter().collect();
        for &e in &edges {
            if e & !universe != 0 {
                return Err(Error::InvalidGraph(format!(
                    "edge {:?} uses a vertex outside 0..{n}",
                    bits::vertices_of(e)
                )));
            }
            if e.count_ones() as usize != r {
                return Err(Error::InvalidGraph(format!(
                    "edge {:?} has size {} but r = {r}",
                    bits::vertices_of(e),
                    e.count_ones()
                )));
            }
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge {:?}",
                bits::vertices_of(w[0])
            )));
        }
        Ok(KGraph { n, r, edges })
    }

    /// Builds a graph from vertex lists.
    pub fn from_lists(n: usize, r: usize, edges: &[&[usize]]) -> Result<Self> {
        for e in edges {
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidGraph(format!("vertex {v} outside 0..{n}")));
            }
        }
        Self::new(n, r, edges.iter().map(|e| bits::mask_of(e)))
    }

    /// Constructor for edge lists already known to be valid and colex-sorted.
    pub(crate) fn from_sorted_unchecked(n: usize, r: usize, edges: Vec<u64>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|e| e.count_ones() as usize == r));
        KGraph { n, r, edges }
    }

    /// Builds a graph from an arbitrary list, dropping duplicates.
    pub(crate) fn from_unsorted_unchecked(n: usize, r: usize, mut edges: Vec<u64>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        Self::from_sorted_unchecked(n, r, edges)
    }

    pub fn empty(n: usize, r: usize) -> Result<Self> {
        Self::new(n, r, std::iter::empty())
    }

    /// The complete `r`-graph `K^r_n`.
    pub fn complete(n: usize, r: usize) -> Result<Self> {
        if n > MAX_VERTICES || r > n {
            return domain(format!("complete graph K^{r}_{n} out of range"));
        }
        Ok(KGraph { n, r, edges: bits::k_subsets(n, r) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edges(&self) -> &[u64] {
        &self.edges
    }

    /// Number of edges `|G|`.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, mask: u64) -> bool {
        self.edges.binary_search(&mask).is_ok()
    }

    /// Edges as sorted vertex lists.
    pub fn edge_lists(&self) -> Vec<Vec<usize>> {
        self.edges.iter().map(|&e| bits::vertices_of(e)).collect()
    }

    /// Same edges on a larger (or equal) vertex universe.
    pub fn with_vertex_count(&self, n: usize) -> Result<Self> {
        Self::new(n, self.r, self.edges.iter().copied())
    }

    /// Mask of all vertices of nonzero degree.
    pub fn support(&self) -> u64 {
        self.edges.iter().fold(0, |acc, &e| acc | e)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&e| e >> v & 1 == 1).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &e in &self.edges {
            for v in iter_bits(e) {
                d[v] += 1;
            }
        }
        d
    }

    /// Sum of degrees over the vertices in `set`.
    pub fn degree_sum(&self, set: u64) -> usize {
        self.edges.iter().map(|&e| (e & set).count_ones() as usize).sum()
    }

    /// Number of edges contained in `set`.
    pub fn edges_within(&self, set: u64) -> usize {
        self.edges.iter().filter(|&&e| e & !set == 0).count()
    }

    /// The `(r-1)`-graph of all `(r-1)`-sets lying in some edge.
    pub fn shadow(&self) -> Result<KGraph> {
        if self.r == 0 {
            return domain("shadow of 0-graph undefined");
        }
        let mut out = Vec::with_capacity(self.edges.len() * self.r);
        for &e in &self.edges {
            for v in iter_bits(e) {
                out.push(e & !(1u64 << v));
            }
        }
        Ok(Self::from_unsorted_unchecked(self.n, self.r - 1, out))
    }

    /// The `s`-shadow: all `s`-sets lying in some edge.
    pub fn s_shadow(&self, s: usize) -> Result<KGraph> {
        if s > self.r {
            return domain(format!("s-shadow needs s <= r, got s = {s}, r = {}", self.r));
        }
        if s == self.r {
            return Ok(self.clone());
        }
        let mut out = Vec::new();
        for &e in &self.edges {
            out.extend(bits::subsets_of_size(e, s));
        }
        Ok(Self::from_unsorted_unchecked(self.n, s, out))
    }

    /// All `m`-sets every `r`-subset of which is an edge, in colex order.
    pub fn cliques(&self, m: usize) -> Result<Vec<u64>> {
        if m < self.r {
            return domain(format!("clique order m = {m} below uniformity r = {}", self.r));
        }
        if m > self.n {
            return Ok(Vec::new());
        }
        if self.r == 0 {
            return Ok(if self.is_empty() { Vec::new() } else { bits::k_subsets(self.n, m) });
        }
        let mut level = self.edges.clone();
        for _ in self.r..m {
            let mut next = Vec::new();
            for &c in &level {
                let top = 64 - c.leading_zeros() as usize;
                // every (r-1)-subset of c joined with v must be an edge
                let rims = bits::subsets_of_size(c, self.r - 1);
                for v in top..self.n {
                    let bit = 1u64 << v;
                    if rims.iter().all(|&a| self.contains(a | bit)) {
                        next.push(c | bit);
                    }
                }
            }
            next.sort_unstable();
            level = next;
        }
        Ok(level)
    }

    /// `K^r_m(G)`: the number of `m`-sets spanning a complete `r`-graph.
    pub fn count_cliques(&self, m: usize) -> Result<u64> {
        if m == self.r {
            return Ok(self.len() as u64);
        }
        Ok(self.cliques(m)?.len() as u64)
    }

    /// Number of `(r+1)`-cliques through each vertex.
    pub fn vertex_clique_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.n];
        if let Ok(cl) = self.cliques(self.r + 1) {
            for c in cl {
                for v in iter_bits(c) {
                    counts[v] += 1;
                }
            }
        }
        counts
    }

    /// The link of `v`: `{A : A ∪ {v} ∈ G, v ∉ A}` as an `(r-1)`-graph.
    pub fn link(&self, v: usize) -> Result<KGraph> {
        if v >= self.n {
            return domain(format!("vertex {v} outside 0..{}", self.n));
        }
        if self.r == 0 {
            return domain("link of 0-graph undefined");
        }
        let bit = 1u64 << v;
        let edges = self.edges.iter().filter(|&&e| e & bit != 0).map(|&e| e & !bit).collect();
        Ok(Self::from_unsorted_unchecked(self.n, self.r - 1, edges))
    }

    /// Deletion `G \ v`: edges avoiding `v`. The vertex universe is kept, so
    /// `v` simply becomes isolated.
    pub fn delete(&self, v: usize) -> Result<KGraph> {
        if v >= self.n {
            return domain(format!("vertex {v} outside 0..{}", self.n));
        }
        let bit = 1u64 << v;
        let edges = self.edges.iter().copied().filter(|&e| e & bit == 0).collect();
        Ok(Self::from_sorted_unchecked(self.n, self.r, edges))
    }

    /// Contraction `G / v`: `{A \ {v} : v ∈ A ∈ G}`.
    pub fn contract(&self, v: usize) -> Result<KGraph> {
        if self.r == 0 {
            return domain("contraction of 0-graph undefined");
        }
        self.link(v)
    }

    /// `H` with `G`'s edges removed, for `H` on the same universe and uniformity.
    pub fn difference(&self, other: &KGraph) -> KGraph {
        let edges = self.edges.iter().copied().filter(|&e| !other.contains(e)).collect();
        Self::from_sorted_unchecked(self.n, self.r, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> KGraph {
        KGraph::from_lists(4, 2, &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]).unwrap()
    }

    #[test]
    fn construction_validates() {
        assert!(matches!(KGraph::from_lists(3, 2, &[&[0, 1, 2]]), Err(Error::InvalidGraph(_))));
        assert!(matches!(KGraph::from_lists(3, 2, &[&[0, 3]]), Err(Error::InvalidGraph(_))));
        let dup = KGraph::from_lists(3, 2, &[&[0, 1], &[1, 0]]);
        assert!(matches!(dup, Err(Error::InvalidGraph(ref m)) if m.contains("duplicate")));
        assert!(KGraph::empty(65, 2).is_err());
    }

    #[test]
    fn shadows_of_small_graphs() {
        let k34 = KGraph::complete(4, 3).unwrap();
        assert_eq!(k34.shadow().unwrap(), KGraph::complete(4, 2).unwrap());
        let sh = c4().shadow().unwrap();
        assert_eq!(sh.len(), 4);
        assert_eq!(sh.r(), 1);
        let zero = KGraph::complete(3, 0).unwrap();
        assert_eq!(zero.shadow(), Err(Error::Domain("shadow of 0-graph undefined".into())));
    }

    #[test]
    fn s_shadow_cases() {
        let k35 = KGraph::complete(5, 3).unwrap();
        assert_eq!(k35.s_shadow(3).unwrap(), k35);
        assert_eq!(k35.s_shadow(1).unwrap().len(), 5);
        assert_eq!(k35.s_shadow(2).unwrap(), k35.shadow().unwrap());
        assert!(k35.s_shadow(4).is_err());
        assert_eq!(k35.s_shadow(0).unwrap().edges(), &[0]);
    }

    #[test]
    fn clique_counts() {
        assert_eq!(c4().count_cliques(3).unwrap(), 0);
        assert_eq!(KGraph::complete(6, 3).unwrap().count_cliques(4).unwrap(), 15);
        assert_eq!(c4().count_cliques(2).unwrap(), 4);
        assert!(c4().count_cliques(1).is_err());
        assert_eq!(c4().count_cliques(5).unwrap(), 0);
    }

    #[test]
    fn k5_minus_edge_has_seven_triangles() {
        // brute force over all 10 triples
        let g = KGraph::complete(5, 2).unwrap().delete_edge(0b11);
        let brute = bits::k_subsets(5, 3)
            .into_iter()
            .filter(|&t| bits::subsets_of_size(t, 2).iter().all(|&p| g.contains(p)))
            .count();
        assert_eq!(brute, 7);
        assert_eq!(g.count_cliques(3).unwrap(), 7);
    }

    #[test]
    fn links_and_contractions() {
        let star = KGraph::from_lists(5, 2, &[&[0, 2], &[1, 2], &[2, 3], &[2, 4]]).unwrap();
        assert_eq!(star.link(2).unwrap().len(), 4);
        let l = c4().link(1).unwrap();
        assert_eq!(l.edge_lists(), vec![vec![0], vec![2]]);
        let k35 = KGraph::complete(5, 3).unwrap();
        let l0 = k35.link(0).unwrap();
        assert_eq!(l0.len(), 6);
        assert!(l0.edges().iter().all(|&e| e & 1 == 0));

        let d = c4().delete(1).unwrap();
        assert_eq!(d.edge_lists(), vec![vec![0, 3], vec![2, 3]]);
        let c = c4().contract(1).unwrap();
        assert_eq!(c.edge_lists(), vec![vec![0], vec![2]]);
        assert_eq!(k35.contract(4).unwrap(), KGraph::complete(4, 2).unwrap().with_vertex_count(5).unwrap());
        assert!(c4().link(4).is_err());
    }

    impl KGraph {
        fn delete_edge(&self, e: u64) -> KGraph {
            KGraph::new(self.n, self.r, self.edges.iter().copied().filter(|&x| x != e)).unwrap()
        }
    }
}
