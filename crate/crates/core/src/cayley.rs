//! The Cayley graph of `S_{n-1}` generated by adjacent transpositions.
//!
//! Vertices are Lehmer ranks of permutations of `[n-1]`, which are also the
//! ranks of cyclic orders of `[n]` (see [`crate::cyclic`]).

use nalgebra::{DMatrix, SymmetricEigen};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cyclic::{self, factorial_u64, lehmer_rank, lehmer_unrank};
use crate::ekr::is_intersecting;
use crate::error::{domain, precondition, Result};
use crate::gbinom::binomial;
use crate::kgraph::KGraph;

/// Largest vertex count for materialized adjacency and the eigensolver.
pub const DENSE_CAP: usize = 5040;
/// Acceptance tolerance for the second eigenvalue.
pub const EIGEN_TOL: f64 = 1e-9;
/// Residual tolerance of the iteration.
pub const ITER_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyGraph {
    n: usize,
    /// `adjacency[k][j]`: rank reached by swapping positions `j`, `j+1`.
    adjacency: Vec<Vec<u32>>,
}

pub fn build_cayley(n: usize) -> Result<CayleyGraph> {
    if n < 3 {
        return domain("Cayley graph needs n >= 3");
    }
    let count = factorial_u64(n - 1);
    if count > DENSE_CAP as u64 {
        return domain(format!("Cayley graph materialization is limited to (n-1)! <= {DENSE_CAP}"));
    }
    let adjacency = (0..count)
        .map(|k| {
            let p = lehmer_unrank(k, n - 1);
            (0..n - 2)
                .map(|j| {
                    let mut q = p.clone();
                    q.swap(j, j + 1);
                    lehmer_rank(&q) as u32
                })
                .collect()
        })
        .collect();
    Ok(CayleyGraph { n, adjacency })
}

/// Neighbors of a permutation without materializing the graph.
pub fn neighbors_of(perm: &[usize]) -> Vec<Vec<usize>> {
    (0..perm.len().saturating_sub(1))
        .map(|j| {
            let mut q = perm.to_vec();
            q.swap(j, j + 1);
            q
        })
        .collect()
}

impl CayleyGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn degree(&self) -> usize {
        self.n - 2
    }

    pub fn neighbors(&self, k: usize) -> &[u32] {
        &self.adjacency[k]
    }

    pub fn dense(&self) -> DMatrix<f64> {
        let m = self.vertex_count();
        let mut a = DMatrix::zeros(m, m);
        for (k, row) in self.adjacency.iter().enumerate() {
            for &j in row {
                a[(k, j as usize)] += 1.0;
            }
        }
        a
    }

    /// `y = (A + dI) x`, column by column.
    fn apply_shifted(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        let d = self.degree() as f64;
        let mut y = x * d;
        for c in 0..x.ncols() {
            for (k, row) in self.adjacency.iter().enumerate() {
                let s: f64 = row.iter().map(|&j| x[(j as usize, c)]).sum();
                y[(k, c)] += s;
            }
        }
        y
    }

    /// Vertices outside `w` adjacent to some vertex of `w`.
    pub fn external_neighborhood(&self, w: &[usize]) -> usize {
        let mut inside = vec![false; self.vertex_count()];
        for &k in w {
            inside[k] = true;
        }
        let mut seen = vec![false; self.vertex_count()];
        let mut count = 0;
        for &k in w {
            for &j in &self.adjacency[k] {
                let j = j as usize;
                if !inside[j] && !seen[j] {
                    seen[j] = true;
                    count += 1;
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        let all: Vec<bool> = vec![true; self.vertex_count()];
        components(self, &all).len() == 1
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub n: usize,
    pub d: usize,
    pub lambda2: f64,
    pub gap: f64,
    /// `2 - 2 cos(π/(n-1))`.
    pub predicted_gap: f64,
    pub agrees: bool,
    /// `(d - λ2) / 2d`.
    pub alpha: f64,
    pub alpha_exceeds_inverse_cube: bool,
    pub iterations: usize,
    pub residual: f64,
}

/// Orthogonal iteration on `A + dI` restricted to the complement of the
/// all-ones vector, with Rayleigh–Ritz extraction.
pub fn second_eigenvalue(c: &CayleyGraph) -> Result<SpectralReport> {
    let m = c.vertex_count();
    let d = c.degree();
    let block = (c.n + 2).min(m - 1);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut q = DMatrix::from_fn(m, block, |_, _| rng.gen::<f64>() - 0.5);
    let deflate = |x: &mut DMatrix<f64>| {
        for c in 0..x.ncols() {
            let mean = x.column(c).mean();
            x.column_mut(c).add_scalar_mut(-mean);
        }
    };
    deflate(&mut q);
    q = q.qr().q();
    let (mut theta, mut residual, mut iterations) = (0.0, f64::INFINITY, 0);
    for it in 1..=200_000 {
        iterations = it;
        let mut z = c.apply_shifted(&q);
        deflate(&mut z);
        if it % 10 == 0 || it == 1 {
            let t = q.transpose() * &z;
            let t = (&t + t.transpose()) * 0.5;
            let eig = SymmetricEigen::new(t);
            let top = eig.eigenvalues.imax();
            theta = eig.eigenvalues[top];
            let y = &q * eig.eigenvectors.column(top);
            let mut my = c.apply_shifted(&DMatrix::from_column_slice(m, 1, y.as_slice()));
            deflate(&mut my);
            residual = (my - DMatrix::from_column_slice(m, 1, y.as_slice()) * theta).norm();
            if residual <= ITER_TOL * (2.0 * d as f64).max(1.0) {
                break;
            }
        }
        q = z.qr().q();
    }
    let lambda2 = theta - d as f64;
    let gap = d as f64 - lambda2;
    let predicted_gap = 2.0 - 2.0 * (std::f64::consts::PI / (c.n - 1) as f64).cos();
    let alpha = gap / (2.0 * d as f64);
    Ok(SpectralReport {
        n: c.n,
        d,
        lambda2,
        gap,
        predicted_gap,
        agrees: (gap - predicted_gap).abs() < EIGEN_TOL,
        alpha,
        alpha_exceeds_inverse_cube: alpha > 1.0 / (c.n as f64).powi(3),
        iterations,
        residual,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpansionReport {
    pub n: usize,
    pub samples: usize,
    pub adversarial: usize,
    /// Smallest `|N(W)| / |W|` seen.
    pub min_ratio: f64,
    /// `1 / n^3`.
    pub bound: f64,
    pub violations: usize,
    pub holds: bool,
}

/// Samples sets `W` with `|W| <= (n-1)!/2` and checks `|N(W)| >= |W| / n^3`.
///
/// Besides `trials` uniform samples, balls around the identity and unions of
/// cosets `{π : π(0) ∈ A}` are tried.
pub fn expansion_check(c: &CayleyGraph, trials: usize, seed: u64) -> Result<ExpansionReport> {
    if trials == 0 {
        return domain("expansion check needs trials >= 1");
    }
    let m = c.vertex_count();
    let half = (m / 2).max(1);
    let bound = 1.0 / (c.n as f64).powi(3);
    let mut sets: Vec<Vec<usize>> = Vec::new();
    // balls
    let mut dist = vec![usize::MAX; m];
    let mut order = vec![0usize];
    dist[0] = 0;
    let mut head = 0;
    while head < order.len() {
        let k = order[head];
        head += 1;
        for &j in c.neighbors(k) {
            if dist[j as usize] == usize::MAX {
                dist[j as usize] = dist[k] + 1;
                order.push(j as usize);
            }
        }
    }
    let radius = dist.iter().copied().max().unwrap_or(0);
    for rad in 0..=radius {
        let ball: Vec<usize> = order.iter().copied().filter(|&k| dist[k] <= rad).collect();
        if ball.len() <= half {
            sets.push(ball);
        }
    }
    // coset unions
    let firsts: Vec<usize> = (0..m).map(|k| lehmer_unrank(k as u64, c.n - 1)[0]).collect();
    for a in 1u64..1 << (c.n - 1) {
        let w: Vec<usize> = (0..m).filter(|&k| a >> firsts[k] & 1 == 1).collect();
        if !w.is_empty() && w.len() <= half {
            sets.push(w);
        }
    }
    let adversarial = sets.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let size = rng.gen_range(1..=half);
        sets.push(sample(&mut rng, m, size).into_vec());
    }
    let mut min_ratio = f64::INFINITY;
    let mut violations = 0;
    for w in &sets {
        let ratio = c.external_neighborhood(w) as f64 / w.len() as f64;
        min_ratio = min_ratio.min(ratio);
        if ratio < bound {
            violations += 1;
        }
    }
    Ok(ExpansionReport { n: c.n, samples: trials, adversarial, min_ratio, bound, violations, holds: violations == 0 })
}

fn components(c: &CayleyGraph, keep: &[bool]) -> Vec<Vec<usize>> {
    let m = c.vertex_count();
    let mut label = vec![usize::MAX; m];
    let mut out = Vec::new();
    for s in 0..m {
        if !keep[s] || label[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut comp = vec![s];
        label[s] = id;
        let mut head = 0;
        while head < comp.len() {
            let k = comp[head];
            head += 1;
            for &j in c.neighbors(k) {
                let j = j as usize;
                if keep[j] && label[j] == usize::MAX {
                    label[j] = id;
                    comp.push(j);
                }
            }
        }
        out.push(comp);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub n: usize,
    pub r: usize,
    pub delta: f64,
    pub orders: u64,
    pub complete: u64,
    pub incomplete: u64,
    /// `δ r (n-1)!`.
    pub incomplete_bound: f64,
    pub incomplete_bound_holds: bool,
    pub components: usize,
    pub largest: usize,
    /// `(1 - n^3 δ r)(n-1)!`.
    pub largest_bound: f64,
    pub largest_bound_holds: bool,
    /// Distinct centers seen in the largest component.
    pub centers: Vec<usize>,
    /// The largest component is `v`-complete for one `v`.
    pub single_center: bool,
    pub center: Option<usize>,
    /// `|G_v|`, edges through the center.
    pub center_degree: usize,
    /// `(1 - δ r) C(n-1, r-1)`.
    pub center_degree_bound: f64,
    pub center_degree_bound_holds: bool,
}

/// Restricts the Cayley graph to complete cyclic orders of an intersecting
/// `G` and inspects the largest component.
pub fn complete_component(g: &KGraph) -> Result<ComponentReport> {
    let (n, r) = (g.n(), g.r());
    if n > cyclic::CLAIM_CAP {
        return domain(format!("complete component analysis is limited to n <= {}", cyclic::CLAIM_CAP));
    }
    if r == 0 || 2 * r >= n {
        return domain("cyclic-order regime requires r < n/2");
    }
    if !is_intersecting(g) {
        return precondition("family is not intersecting");
    }
    let c = build_cayley(n)?;
    let classes = cyclic::classify_all(g)?;
    let keep: Vec<bool> = classes.iter().map(|x| x.is_complete()).collect();
    let comps = components(&c, &keep);
    let largest = comps.iter().max_by_key(|v| v.len()).cloned().unwrap_or_default();
    let mut centers: Vec<usize> = largest.iter().filter_map(|&k| classes[k].center).collect();
    centers.sort_unstable();
    centers.dedup();
    let uncentered = largest.iter().any(|&k| classes[k].center.is_none());
    let single_center = !largest.is_empty() && centers.len() == 1 && !uncentered;
    let center = single_center.then(|| centers[0]);
    let max = binomial(n as u64 - 1, r as u64 - 1) as f64;
    let delta = (1.0 - g.len() as f64 / max).max(0.0);
    let orders = c.vertex_count() as u64;
    let complete = keep.iter().filter(|&&b| b).count() as u64;
    let incomplete = orders - complete;
    let of = orders as f64;
    let tol = 1e-9 * of;
    let incomplete_bound = delta * r as f64 * of;
    let largest_bound = (1.0 - (n as f64).powi(3) * delta * r as f64) * of;
    let center_degree = center.map_or(0, |v| g.degree(v));
    let center_degree_bound = (1.0 - delta * r as f64) * max;
    Ok(ComponentReport {
        n,
        r,
        delta,
        orders,
        complete,
        incomplete,
        incomplete_bound,
        incomplete_bound_holds: incomplete as f64 <= incomplete_bound + tol,
        components: comps.len(),
        largest: largest.len(),
        largest_bound,
        largest_bound_holds: largest.len() as f64 + tol >= largest_bound,
        centers,
        single_center,
        center,
        center_degree,
        center_degree_bound,
        center_degree_bound_holds: center_degree as f64 + 1e-9 >= center_degree_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits;

    fn star(n: usize, r: usize, c: usize) -> KGraph {
        KGraph::new(n, r, bits::k_subsets(n, r).into_iter().filter(|&e| e >> c & 1 == 1)).unwrap()
    }

    #[test]
    fn construction_examples() {
        let c = build_cayley(4).unwrap();
        assert_eq!((c.vertex_count(), c.degree()), (6, 2));
        assert!(c.is_connected());
        let c3 = build_cayley(3).unwrap();
        assert_eq!((c3.vertex_count(), c3.degree()), (2, 1));
        let c5 = build_cayley(5).unwrap();
        assert_eq!(c5.vertex_count(), 24);
        assert!(c5.is_connected());
        for k in 0..24 {
            assert_eq!(c5.neighbors(k).len(), 3);
            for &j in c5.neighbors(k) {
                assert!(c5.neighbors(j as usize).contains(&(k as u32)));
            }
        }
        assert!(build_cayley(2).is_err());
    }

    #[test]
    fn small_spectra() {
        let s = second_eigenvalue(&build_cayley(4).unwrap()).unwrap();
        assert!((s.lambda2 - 1.0).abs() < EIGEN_TOL && s.agrees);
        let s = second_eigenvalue(&build_cayley(3).unwrap()).unwrap();
        assert!((s.lambda2 + 1.0).abs() < EIGEN_TOL && s.agrees);
    }

    #[test]
    fn expansion_examples() {
        let c = build_cayley(4).unwrap();
        // three consecutive vertices of the 6-cycle
        let a = 0usize;
        let b = c.neighbors(a)[0] as usize;
        let d = c.neighbors(b).iter().map(|&x| x as usize).find(|&x| x != a).unwrap();
        assert_eq!(c.external_neighborhood(&[a, b, d]), 2);
        assert_eq!(c.external_neighborhood(&[a]), 2);
        let rep = expansion_check(&build_cayley(5).unwrap(), 200, 7).unwrap();
        assert!(rep.holds && rep.adversarial > 0);
    }

    #[test]
    fn component_examples() {
        let rep = complete_component(&star(5, 2, 1)).unwrap();
        assert_eq!((rep.complete, rep.components, rep.center), (24, 1, Some(1)));
        let s = star(6, 2, 0);
        let g = KGraph::new(6, 2, s.edges()[1..].iter().copied()).unwrap();
        let rep = complete_component(&g).unwrap();
        assert_eq!(rep.center, Some(0));
        assert!((rep.delta - 0.2).abs() < 1e-12);
        // 72 complete orders split by whether 0 precedes 1: no adjacent swap
        // moves 0 past 1 without making them neighbours
        assert_eq!((rep.complete, rep.components, rep.largest), (72, 2, 36));
        assert!(rep.incomplete_bound_holds && rep.largest_bound_holds && rep.center_degree_bound_holds);
        let rep = complete_component(&KGraph::empty(5, 2).unwrap()).unwrap();
        assert_eq!((rep.complete, rep.largest, rep.center), (0, 0, None));
    }
}
