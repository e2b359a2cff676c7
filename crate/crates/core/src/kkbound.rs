//! Lovász's form of the Kruskal–Katona theorem: if `|G| = C(x, r)` then
//! `K^r_{r+1}(G) <= C(x, r+1)`, with equality only for `K^r_x`; and the
//! shadow bounds that follow from it.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::gbinom::{binomial, gbinom, gbinom_branch, integer_root, solve_x};
use crate::kgraph::KGraph;

/// Additive slack on the real-valued side of every bound.
pub const BOUND_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub n: usize,
    pub r: usize,
    pub edges: usize,
    /// Vertices of nonzero degree.
    pub support: usize,
}

impl GraphSummary {
    pub fn of(g: &KGraph) -> Self {
        GraphSummary { n: g.n(), r: g.r(), edges: g.len(), support: g.support().count_ones() as usize }
    }
}

/// Result of the clique bound at one graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KKReport {
    pub graph: GraphSummary,
    /// `C(x, r) = |G|`.
    pub x: f64,
    pub clique_count: u64,
    pub bound: f64,
    pub satisfied: bool,
    /// `clique_count` equals the bound exactly (integer arithmetic).
    pub equality: bool,
    /// `Some(k)` when `G` is the complete `r`-graph on its `k` non-isolated vertices.
    pub equality_witness: Option<u64>,
}

/// `Some(k)` when `G` is `K^r_k` on its support.
pub fn complete_witness(g: &KGraph) -> Option<u64> {
    let k = integer_root(g.len() as u64, g.r())?;
    (g.support().count_ones() as u64 == k).then_some(k)
}

/// Evaluates `K^r_{r+1}(G) <= C(x, r+1)` and the equality diagnosis.
pub fn lovasz_check(g: &KGraph) -> Result<KKReport> {
    let r = g.r();
    if r == 0 {
        return domain("clique bound needs r >= 1");
    }
    let m = g.len() as u64;
    let x = solve_x(m, r)?;
    let clique_count = if m == 0 { 0 } else { g.count_cliques(r + 1)? };
    let bound = if m == 0 { 0.0 } else { gbinom(x, r + 1) };
    let equality = match integer_root(m, r) {
        Some(k) if m > 0 => binomial(k, r as u64 + 1) == clique_count as u128,
        _ => false,
    };
    Ok(KKReport {
        graph: GraphSummary::of(g),
        x,
        clique_count,
        bound,
        satisfied: clique_count as f64 <= bound + BOUND_TOL,
        equality,
        equality_witness: if equality { complete_witness(g) } else { None },
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShadowReport {
    pub graph: GraphSummary,
    pub x: f64,
    pub s: usize,
    pub shadow_size: usize,
    pub bound: f64,
    pub satisfied: bool,
    /// For `s = r - 1`: `K^{r-1}_r(∂G)`, which must be at least `|G|`.
    pub shadow_cliques: Option<u64>,
    pub containment_holds: bool,
}

/// `|∂G| >= C(x, r-1)`, together with the containment `G ⊆ K^{r-1}_r(∂G)`.
pub fn shadow_check(g: &KGraph) -> Result<ShadowReport> {
    if g.r() == 0 {
        return domain("shadow of 0-graph undefined");
    }
    let mut rep = iterated_shadow_check(g, g.r() - 1)?;
    let sh = g.shadow()?;
    let cl = sh.count_cliques(g.r())?;
    rep.shadow_cliques = Some(cl);
    rep.containment_holds = cl >= g.len() as u64 && g.edges().iter().all(|&e| {
        crate::bits::iter_bits(e).all(|v| sh.contains(e & !(1u64 << v)))
    });
    Ok(rep)
}

/// `|∂^r_s G| >= C(x, s)`.
pub fn iterated_shadow_check(g: &KGraph, s: usize) -> Result<ShadowReport> {
    let r = g.r();
    if r == 0 {
        return domain("shadow bound needs r >= 1");
    }
    if s > r {
        return domain(format!("need s <= r, got s = {s}, r = {r}"));
    }
    let m = g.len() as u64;
    let x = solve_x(m, r)?;
    let shadow_size = g.s_shadow(s)?.len();
    // an empty graph has an empty shadow and no bound to meet
    let bound = if m == 0 { 0.0 } else { gbinom(x, s) };
    Ok(ShadowReport {
        graph: GraphSummary::of(g),
        x,
        s,
        shadow_size,
        bound,
        satisfied: shadow_size as f64 + BOUND_TOL >= bound,
        shadow_cliques: None,
        containment_holds: true,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainStep {
    pub order: usize,
    pub count: u64,
    pub x: f64,
    pub next_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub l: usize,
    pub m: usize,
    /// `C(x, l) = K^r_l(G)`.
    pub x: f64,
    pub count_l: u64,
    pub count_m: u64,
    pub bound: f64,
    pub vacuous: bool,
    pub satisfied: bool,
    /// Per-level application of the clique bound along the chain of clique graphs.
    pub steps: Vec<ChainStep>,
    /// The iterated clique-graph count agrees with the direct count.
    pub routes_agree: bool,
}

/// The `(k+1)`-graph of `(k+1)`-sets spanning a `K^k_{k+1}` in `g`.
pub fn clique_graph(g: &KGraph) -> Result<KGraph> {
    if g.r() >= g.n() {
        return KGraph::empty(g.n(), g.n());
    }
    let cl = g.cliques(g.r() + 1)?;
    Ok(KGraph::from_sorted_unchecked(g.n(), g.r() + 1, cl))
}

/// For `r <= l <= m` with `K^r_l(G) = C(x, l)`: `K^r_m(G) <= C(x, m)`.
///
/// Runs the bound by walking up the chain of clique graphs, each step an
/// application of the clique bound, and compares the final count with a
/// direct clique count.
pub fn chained_clique_check(g: &KGraph, l: usize, m: usize) -> Result<ChainReport> {
    let r = g.r();
    if !(r <= l && l <= m && m <= g.n()) {
        return domain(format!("need r <= l <= m <= n, got r={r}, l={l}, m={m}, n={}", g.n()));
    }
    if l == 0 {
        return domain("chain needs l >= 1");
    }
    let count_l = g.count_cliques(l)?;
    let count_m = g.count_cliques(m)?;
    if count_l == 0 {
        return Ok(ChainReport {
            l,
            m,
            x: l as f64 - 1.0,
            count_l,
            count_m,
            bound: 0.0,
            vacuous: true,
            satisfied: count_m == 0,
            steps: Vec::new(),
            routes_agree: count_m == 0,
        });
    }
    let x = solve_x(count_l, l)?;
    let mut layer = if l == r {
        g.clone()
    } else {
        KGraph::from_sorted_unchecked(g.n(), l, g.cliques(l)?)
    };
    let mut steps = Vec::new();
    let mut ok = true;
    for order in l..m {
        let c = layer.len() as u64;
        let xk = solve_x(c, order)?;
        let next = clique_graph(&layer)?;
        let nb = if c == 0 { 0.0 } else { gbinom_branch(xk, order + 1) };
        ok &= next.len() as f64 <= nb + BOUND_TOL;
        steps.push(ChainStep { order, count: c, x: xk, next_bound: nb });
        layer = next;
    }
    // below m - 1 the polynomial turns negative; the bound there is 0
    let bound = gbinom_branch(x, m);
    Ok(ChainReport {
        l,
        m,
        x,
        count_l,
        count_m,
        bound,
        vacuous: false,
        satisfied: ok && count_m as f64 <= bound + BOUND_TOL,
        routes_agree: layer.len() as u64 == count_m,
        steps,
    })
}

/// Per-vertex quantities from the counting proof of the clique bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexAudit {
    pub x: f64,
    pub degrees: Vec<usize>,
    pub vertex_cliques: Vec<u64>,
    /// `K(v) <= (x/r - 1) d(v)` at every vertex.
    pub linear_bound_holds: bool,
    /// `K(v) <= |G| - d(v)` at every vertex.
    pub complement_bound_holds: bool,
    /// `(r+1) K^r_{r+1}(G) = Σ_v K(v)`.
    pub handshake_holds: bool,
    /// Every non-isolated vertex has degree `C(x-1, r-1)` and there are exactly `x` of them.
    pub regular_at_threshold: bool,
}

pub fn vertex_audit(g: &KGraph) -> Result<VertexAudit> {
    let r = g.r();
    if r == 0 {
        return domain("vertex audit needs r >= 1");
    }
    let m = g.len();
    let x = solve_x(m as u64, r)?;
    let degrees = g.degrees();
    let vertex_cliques = g.vertex_clique_counts();
    let total = if m == 0 { 0 } else { g.count_cliques(r + 1)? };
    let slope = x / r as f64 - 1.0;
    let linear_bound_holds = degrees
        .iter()
        .zip(&vertex_cliques)
        .all(|(&d, &k)| k as f64 <= slope * d as f64 + BOUND_TOL * (1.0 + d as f64));
    let complement_bound_holds = degrees.iter().zip(&vertex_cliques).all(|(&d, &k)| k as usize + d <= m);
    let handshake_holds = (r as u64 + 1) * total == vertex_cliques.iter().sum::<u64>();
    let target = gbinom(x - 1.0, r - 1);
    let active: Vec<usize> = degrees.iter().copied().filter(|&d| d > 0).collect();
    let regular_at_threshold = m > 0
        && active.iter().all(|&d| (d as f64 - target).abs() <= BOUND_TOL * target.max(1.0))
        && (active.len() as f64 - x).abs() <= BOUND_TOL * x.max(1.0);
    Ok(VertexAudit {
        x,
        degrees,
        vertex_cliques,
        linear_bound_holds,
        complement_bound_holds,
        handshake_holds,
        regular_at_threshold,
    })
}
