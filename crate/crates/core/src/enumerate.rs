//! Exhaustive enumeration of small `r`-graphs.
//!
//! A graph on `n` vertices is a bitmask over the `C(n, r)` candidate edges in
//! colex order, so the `2^{C(n,r)}` graphs are the integers below that bound.

use rayon::prelude::*;

use crate::bits;
use crate::error::{domain, Result};
use crate::kgraph::KGraph;

/// Upper limit on `C(n, r)` for exhaustive enumeration.
pub const MAX_EDGE_SLOTS: usize = 24;

#[derive(Clone, Debug)]
pub struct GraphSpace {
    n: usize,
    r: usize,
    slots: Vec<u64>,
}

impl GraphSpace {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        let slots = bits::k_subsets(n, r);
        if slots.len() > MAX_EDGE_SLOTS {
            return domain(format!("2^{} graphs is beyond exhaustive reach", slots.len()));
        }
        Ok(GraphSpace { n, r, slots })
    }

    pub fn slots(&self) -> &[u64] {
        &self.slots
    }

    pub fn count(&self) -> u64 {
        1u64 << self.slots.len()
    }

    pub fn graph(&self, code: u64) -> KGraph {
        let edges = bits::iter_bits(code).map(|i| self.slots[i]).collect();
        KGraph::from_sorted_unchecked(self.n, self.r, edges)
    }

    pub fn iter(&self) -> impl Iterator<Item = KGraph> + '_ {
        (0..self.count()).map(|c| self.graph(c))
    }

    /// Applies `f` to every graph in parallel and collects the results in code
    /// order.
    pub fn par_map<T: Send>(&self, f: impl Fn(u64, &KGraph) -> T + Sync + Send) -> Vec<T> {
        (0..self.count()).into_par_iter().map(|c| f(c, &self.graph(c))).collect()
    }

    /// Code of the graph with the given edges, all drawn from this space.
    pub fn code(&self, g: &KGraph) -> Option<u64> {
        g.edges().iter().try_fold(0u64, |acc, e| self.slots.binary_search(e).ok().map(|i| acc | 1 << i))
    }
}
