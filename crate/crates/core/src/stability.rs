//! Structure of `r`-graphs whose clique count is close to the maximum.
//!
//! Given `G` with `|G| = C(x, r)` and `K^r_{r+1}(G) = (1 - δ) C(x, r+1)`, the
//! extractor splits vertices by degree, discards the very high and very low
//! degree classes to get a core `C`, and trims or pads `C` to a set `S` of
//! `⌈x⌉` vertices that contains almost every edge.
//!
//! The quantitative statements hold for every `δ' > δ`; they are evaluated in
//! the limit `δ' → δ`, where strict inequalities become non-strict.

use serde::{Deserialize, Serialize};

use crate::bits::{iter_bits, vertices_of};
use crate::error::{domain, Error, Result};
use crate::gbinom::{gbinom, gbinom_branch, solve_x};
use crate::kgraph::KGraph;

const TOL: f64 = 1e-9;

fn le(a: f64, b: f64) -> bool {
    a <= b + TOL * b.abs().max(1.0)
}

/// Degree classes `A ⊇ A0` (high) and `B ⊇ B0` (low), as vertex masks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeClasses {
    pub a: u64,
    pub a0: u64,
    pub b: u64,
    pub b0: u64,
    /// A negative `delta` was supplied and clamped to zero.
    pub delta_clamped: bool,
}

/// Splits vertices by degree relative to `C(x-1, r-1)`:
/// `A = {d > C(x-1,r-1)}`, `A0 = {d > (1+√δ) C(x-1,r-1)}`, `B = V \ A`,
/// `B0 = {d < C(x-1-y, r-1)}` with `y = √δ (x - r)`.
pub fn classify_degrees(g: &KGraph, x: f64, delta: f64) -> Result<DegreeClasses> {
    let r = g.r();
    if r == 0 {
        return domain("degree classes need r >= 1");
    }
    if x < r as f64 {
        return domain(format!("degree classes need x >= r, got x = {x}"));
    }
    let delta_clamped = delta < 0.0;
    let sd = delta.max(0.0).sqrt();
    let base = gbinom(x - 1.0, r - 1);
    let high = (1.0 + sd) * base;
    let y = sd * (x - r as f64);
    let low = gbinom(x - 1.0 - y, r - 1);
    let mut c = DegreeClasses { a: 0, a0: 0, b: 0, b0: 0, delta_clamped };
    let slack = |t: f64| TOL * t.abs().max(1.0);
    for (v, d) in g.degrees().into_iter().enumerate() {
        let d = d as f64;
        let bit = 1u64 << v;
        if d > base + slack(base) {
            c.a |= bit;
        } else {
            c.b |= bit;
        }
        if d > high + slack(high) {
            c.a0 |= bit;
        }
        if d < low - slack(low) {
            c.b0 |= bit;
        }
    }
    Ok(c)
}

/// The `(r+1)`-graph whose edges are the `K^r_{r+1}` copies of `g`.
pub fn clique_hypergraph(g: &KGraph) -> Result<KGraph> {
    crate::kkbound::clique_graph(g)
}

/// Quantitative statements, each evaluated at the instance's `δ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatementFlags {
    /// At most `10r(1/ε + 1)√δ C(x,r)` edges leave `S`.
    pub edges_outside_s: bool,
    /// At most `√δ x` vertices of degree above `(1+√δ) C(x-1,r-1)`.
    pub few_high_degree: bool,
    /// Vertices of degree below `C((1-√δ)(x-1), r-1)` meet at most `√δ x C(x-1,r-1)` edges.
    pub low_degree_edges: bool,
    /// `|C| <= (1+3r√δ)x` and `C` holds at least `C((1-4√δ)x, r+1)` cliques.
    pub core: bool,
}

impl StatementFlags {
    pub fn all(&self) -> bool {
        self.edges_outside_s && self.few_high_degree && self.low_degree_edges && self.core
    }
}

/// Intermediate inequalities of the extraction argument.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InternalChecks {
    /// `|A0| <= √δ (x - r)`.
    pub a0_small: bool,
    /// `d(B0) <= √δ r C(x, r)`.
    pub b0_degree_small: bool,
    /// `|H1| <= 3√δ (r+1) C(x, r+1)`.
    pub h1_small: bool,
    /// At least `C((1-4√δ)x, r)` edges of `G` inside `C`.
    pub edges_in_core: bool,
}

impl InternalChecks {
    pub fn all(&self) -> bool {
        self.a0_small && self.b0_degree_small && self.h1_small && self.edges_in_core
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub n: usize,
    pub r: usize,
    pub edges: usize,
    pub cliques: u64,
    pub x: f64,
    pub delta: f64,
    pub y: f64,
    pub epsilon: f64,
    pub classes: DegreeClasses,
    pub core: Vec<usize>,
    pub s: Vec<usize>,
    pub h_size: u64,
    pub h0_size: u64,
    pub h1_size: u64,
    pub edges_in_core: usize,
    pub exceptional_edges: usize,
    /// `10r(1/ε + 1)√δ C(x, r)`.
    pub exceptional_bound: f64,
    /// `0 < ε < 1/2`, `r >= 2`, `x >= (1+ε)(r+1)` and `δ < (ε/6r)^2`.
    pub hypotheses_met: bool,
    pub statements: StatementFlags,
    pub internal: InternalChecks,
}

impl StabilityReport {
    /// Set `S` as a mask.
    pub fn s_mask(&self) -> u64 {
        crate::bits::mask_of(&self.s)
    }
}

/// Runs the stability extraction on `g` with flag threshold parameter `epsilon`.
pub fn extract_stability(g: &KGraph, epsilon: f64) -> Result<StabilityReport> {
    let r = g.r();
    if r == 0 {
        return domain("stability needs r >= 1");
    }
    let cliques = g.cliques(r + 1)?;
    if cliques.is_empty() {
        return Err(Error::Precondition("no cliques: stability undefined".into()));
    }
    let m = g.len();
    let rf = r as f64;
    let x = solve_x(m as u64, r)?;
    let max_cliques = gbinom(x, r + 1);
    let raw_delta = 1.0 - cliques.len() as f64 / max_cliques;
    let delta = if raw_delta.abs() < 1e-12 { 0.0 } else { raw_delta.max(0.0) };
    let sd = delta.sqrt();
    let y = sd * (x - rf);
    let classes = classify_degrees(g, x, delta)?;
    let degrees = g.degrees();
    let all = crate::bits::low_mask(g.n());
    let core = all & !(classes.a0 | classes.b0);

    let target = x.ceil() as usize;
    let core_size = core.count_ones() as usize;
    let s_mask = if core_size >= target {
        // keep the highest-degree core vertices, lowest index on ties
        let mut vs = vertices_of(core);
        vs.sort_by(|&a, &b| degrees[b].cmp(&degrees[a]).then(a.cmp(&b)));
        crate::bits::mask_of(&vs[..target])
    } else {
        let mut s = core;
        for v in 0..g.n() {
            if s.count_ones() as usize == target {
                break;
            }
            s |= 1u64 << v;
        }
        s
    };

    let h_size = cliques.len() as u64;
    let h0_size = cliques.iter().filter(|&&c| c & !core == 0).count() as u64;
    let h1_size = h_size - h0_size;
    let edges_in_core = g.edges_within(core);
    let exceptional_edges = m - g.edges_within(s_mask);

    let binom_x_r = m as f64;
    let base = gbinom(x - 1.0, r - 1);
    let exceptional_bound = 10.0 * rf * (1.0 / epsilon + 1.0) * sd * binom_x_r;
    let low_cut = gbinom_branch((1.0 - sd) * (x - 1.0), r - 1);
    let low_degree_sum: usize = degrees.iter().filter(|&&d| (d as f64) < low_cut - TOL).sum();

    let statements = StatementFlags {
        edges_outside_s: le(exceptional_edges as f64, exceptional_bound),
        few_high_degree: le(classes.a0.count_ones() as f64, sd * x),
        low_degree_edges: le(low_degree_sum as f64, sd * x * base),
        core: le(core_size as f64, (1.0 + 3.0 * rf * sd) * x)
            && le(gbinom_branch((1.0 - 4.0 * sd) * x, r + 1), h0_size as f64),
    };
    let internal = InternalChecks {
        a0_small: le(classes.a0.count_ones() as f64, sd * (x - rf)),
        b0_degree_small: le(g.degree_sum(classes.b0) as f64, sd * rf * binom_x_r),
        h1_small: le(h1_size as f64, 3.0 * sd * (rf + 1.0) * max_cliques),
        edges_in_core: le(gbinom_branch((1.0 - 4.0 * sd) * x, r), edges_in_core as f64),
    };
    let hypotheses_met = epsilon > 0.0
        && epsilon < 0.5
        && r >= 2
        && x >= (1.0 + epsilon) * (rf + 1.0)
        && delta < (epsilon / (6.0 * rf)).powi(2);

    Ok(StabilityReport {
        n: g.n(),
        r,
        edges: m,
        cliques: h_size,
        x,
        delta,
        y,
        epsilon,
        classes,
        core: iter_bits(core).collect(),
        s: iter_bits(s_mask).collect(),
        h_size,
        h0_size,
        h1_size,
        edges_in_core,
        exceptional_edges,
        exceptional_bound,
        hypotheses_met,
        statements,
        internal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_has_no_defect() {
        let g = KGraph::complete(6, 3).unwrap().with_vertex_count(8).unwrap();
        let c = classify_degrees(&g, 6.0, 0.0).unwrap();
        assert_eq!(c.a, 0);
        assert_eq!(c.a0, 0);
        assert_eq!(c.b, 0xff);
        // isolated vertices 6 and 7 fall below every threshold
        assert_eq!(c.b0, 0b1100_0000);

        let rep = extract_stability(&g, 0.25).unwrap();
        assert_eq!(rep.delta, 0.0);
        assert_eq!(rep.s, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(rep.exceptional_edges, 0);
        assert!(rep.statements.all() && rep.internal.all());
    }

    #[test]
    fn clique_hypergraph_examples() {
        let h = clique_hypergraph(&KGraph::complete(5, 3).unwrap()).unwrap();
        assert_eq!(h, KGraph::complete(5, 4).unwrap());
        let c4 = KGraph::from_lists(4, 2, &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]).unwrap();
        assert!(clique_hypergraph(&c4).unwrap().is_empty());
        let k5 = KGraph::complete(5, 2).unwrap();
        let minus = KGraph::new(5, 2, k5.edges().iter().copied().filter(|&e| e != 0b11)).unwrap();
        assert_eq!(clique_hypergraph(&minus).unwrap().len(), 7);
    }

    #[test]
    fn no_cliques_is_an_error() {
        let c4 = KGraph::from_lists(4, 2, &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]).unwrap();
        assert_eq!(
            extract_stability(&c4, 0.25).unwrap_err(),
            Error::Precondition("no cliques: stability undefined".into())
        );
    }

    #[test]
    fn pendant_vertex_lands_in_low_class() {
        // K^2_5 on 0..4 plus the pendant edge {4,5}
        let mut e = KGraph::complete(5, 2).unwrap().edges().to_vec();
        e.push(0b110000);
        let g = KGraph::new(6, 2, e).unwrap();
        let rep = extract_stability(&g, 0.25).unwrap();
        assert!(rep.classes.b0 >> 5 & 1 == 1);
        assert_eq!(rep.classes.a0 & rep.classes.b0, 0);
        assert!(rep.classes.a0 & !rep.classes.a == 0 && rep.classes.b0 & !rep.classes.b == 0);
    }

    #[test]
    fn negative_delta_is_clamped() {
        let g = KGraph::complete(5, 2).unwrap();
        let c = classify_degrees(&g, 5.0, -0.1).unwrap();
        assert!(c.delta_clamped);
        assert_eq!(c.a0, 0);
    }
}
