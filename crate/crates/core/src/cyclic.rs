//! Cyclic orders and interval families.
//!
//! A cyclic order of `[n]` is stored as its representative with last entry
//! `n - 1`; dropping that entry identifies cyclic orders with permutations of
//! `[n-1]`, which are ranked by Lehmer code.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{self, low_mask};
use crate::ekr::is_intersecting;
use crate::error::{domain, precondition, Error, Result};
use crate::gbinom::binomial;
use crate::kgraph::KGraph;

/// Largest `n` for exhaustive sums over all cyclic orders.
pub const IDENTITY_CAP: usize = 10;
/// Largest `n` for exhaustive checks over (order, transposition) pairs.
pub const CLAIM_CAP: usize = 8;

pub fn factorial_u64(m: usize) -> u64 {
    (1..=m as u64).product()
}

/// Permutation of `[m]` with the given Lehmer rank.
pub fn lehmer_unrank(mut rank: u64, m: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..m).collect();
    let mut out = Vec::with_capacity(m);
    for i in (0..m).rev() {
        let f = factorial_u64(i);
        let d = (rank / f) as usize;
        rank %= f;
        out.push(pool.remove(d));
    }
    out
}

/// Lehmer rank of a permutation of `[m]`.
pub fn lehmer_rank(perm: &[usize]) -> u64 {
    let m = perm.len();
    let mut rank = 0;
    let mut used = 0u64;
    for (i, &p) in perm.iter().enumerate() {
        let smaller = p as u64 - (used & low_mask(p)).count_ones() as u64;
        rank += smaller * factorial_u64(m - 1 - i);
        used |= 1 << p;
    }
    rank
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicOrder {
    perm: Vec<usize>,
}

impl CyclicOrder {
    /// Canonical representative of the cyclic class of `perm`.
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        if n == 0 || n > 64 {
            return domain("cyclic order needs 1 <= n <= 64");
        }
        let mut seen = 0u64;
        for &p in &perm {
            if p >= n || seen >> p & 1 == 1 {
                return domain("not a permutation");
            }
            seen |= 1 << p;
        }
        Ok(Self::canonical(perm))
    }

    fn canonical(mut perm: Vec<usize>) -> Self {
        let n = perm.len();
        let at = perm.iter().position(|&p| p == n - 1).expect("permutation");
        perm.rotate_left((at + 1) % n);
        CyclicOrder { perm }
    }

    pub fn identity(n: usize) -> Self {
        CyclicOrder { perm: (0..n).collect() }
    }

    /// The cyclic order whose first `n - 1` entries form the permutation with
    /// this Lehmer rank.
    pub fn from_rank(rank: u64, n: usize) -> Self {
        let mut perm = lehmer_unrank(rank, n - 1);
        perm.push(n - 1);
        CyclicOrder { perm }
    }

    pub fn rank(&self) -> u64 {
        lehmer_rank(&self.perm[..self.perm.len() - 1])
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn position(&self, v: usize) -> usize {
        self.perm.iter().position(|&p| p == v).expect("vertex in range")
    }

    /// Swaps the entries at positions `i` and `i + 1` (0-based, mod `n`) and
    /// re-canonicalizes.
    pub fn swap_adjacent(&self, i: usize) -> Self {
        let n = self.n();
        let mut perm = self.perm.clone();
        perm.swap(i % n, (i + 1) % n);
        Self::canonical(perm)
    }

    /// Every rotation as a plain sequence.
    pub fn rotations(&self) -> Vec<Vec<usize>> {
        (0..self.n())
            .map(|k| {
                let mut p = self.perm.clone();
                p.rotate_left(k);
                p
            })
            .collect()
    }
}

/// All cyclic orders of `[n]` in rank order.
pub fn all_orders(n: usize) -> impl Iterator<Item = CyclicOrder> {
    (0..factorial_u64(n.saturating_sub(1))).map(move |k| CyclicOrder::from_rank(k, n))
}

/// The `n` intervals of length `r`, as `(start position, set)`.
pub fn intervals(sigma: &CyclicOrder, r: usize) -> Result<Vec<(usize, u64)>> {
    let n = sigma.n();
    if r == 0 || r > n {
        return domain(format!("interval length must be in 1..={n}"));
    }
    let p = sigma.perm();
    Ok((0..n).map(|x| (x, (0..r).fold(0u64, |m, j| m | 1 << p[(x + j) % n]))).collect())
}

fn distinct_intervals(sigma: &CyclicOrder, r: usize) -> Result<Vec<u64>> {
    let mut sets: Vec<u64> = intervals(sigma, r)?.into_iter().map(|(_, s)| s).collect();
    sets.sort_unstable();
    sets.dedup();
    Ok(sets)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Incomplete,
    Complete,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Completeness {
    pub status: Status,
    /// Common vertex of `G(σ)` when complete (lowest index).
    pub center: Option<usize>,
}

impl Completeness {
    pub fn is_complete(&self) -> bool {
        self.status == Status::Complete
    }

    pub fn is_v_complete(&self, v: usize) -> bool {
        self.is_complete() && self.center == Some(v)
    }
}

/// The members of `G` that are intervals of `σ`, and whether there are `r` of them.
pub fn restrict(g: &KGraph, sigma: &CyclicOrder) -> Result<(Vec<u64>, Completeness)> {
    if sigma.n() != g.n() {
        return domain("cyclic order and graph have different vertex counts");
    }
    let members: Vec<u64> =
        distinct_intervals(sigma, g.r())?.into_iter().filter(|&s| g.contains(s)).collect();
    let complete = members.len() == g.r();
    let center = if complete {
        let common = members.iter().fold(low_mask(g.n()), |a, &s| a & s);
        (common != 0).then(|| common.trailing_zeros() as usize)
    } else {
        None
    };
    let status = if complete { Status::Complete } else { Status::Incomplete };
    Ok((members, Completeness { status, center }))
}

/// Classification of every cyclic order, indexed by rank.
pub fn classify_all(g: &KGraph) -> Result<Vec<Completeness>> {
    let (n, r) = (g.n(), g.r());
    if n > IDENTITY_CAP {
        return Err(Error::Infeasible("exhaustive identity check infeasible".into()));
    }
    if r == 0 || r > n {
        return domain("interval length must be in 1..=n");
    }
    Ok((0..factorial_u64(n - 1))
        .into_par_iter()
        .map(|k| restrict(g, &CyclicOrder::from_rank(k, n)).map(|(_, c)| c).expect("validated"))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub n: usize,
    pub r: usize,
    /// `r! (n-r)! |G|`.
    pub lhs: u128,
    /// `Σ_σ |G(σ)|` over all cyclic orders.
    pub rhs: u128,
    pub holds: bool,
}

/// Both sides of `r!(n-r)!|G| = Σ_σ |G(σ)|`, exactly.
pub fn katona_identity_check(g: &KGraph) -> Result<IdentityReport> {
    let (n, r) = (g.n(), g.r());
    if n > IDENTITY_CAP {
        return Err(Error::Infeasible("exhaustive identity check infeasible".into()));
    }
    if r == 0 || r >= n {
        return domain("counting identity needs 1 <= r < n");
    }
    let lhs = factorial_u64(r) as u128 * factorial_u64(n - r) as u128 * g.len() as u128;
    let rhs: u128 = (0..factorial_u64(n - 1))
        .into_par_iter()
        .map(|k| restrict(g, &CyclicOrder::from_rank(k, n)).expect("validated").0.len() as u128)
        .sum();
    Ok(IdentityReport { n, r, lhs, rhs, holds: lhs == rhs })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IncompleteReport {
    pub n: usize,
    pub r: usize,
    pub delta: f64,
    /// Number of incomplete cyclic orders.
    pub incomplete: u64,
    /// `r (n-1)! - (1-δ) r! (n-r)! C(n-1, r-1)`.
    pub bound: f64,
    /// `δ r (n-1)!`.
    pub delta_bound: f64,
    pub holds: bool,
}

/// Counts incomplete orders of an intersecting `G` against both upper bounds.
pub fn incomplete_count_check(g: &KGraph) -> Result<IncompleteReport> {
    let (n, r) = (g.n(), g.r());
    if r == 0 || 2 * r >= n {
        return domain("cyclic-order regime requires r < n/2");
    }
    if !is_intersecting(g) {
        return precondition("family is not intersecting");
    }
    let classes = classify_all(g)?;
    let incomplete = classes.iter().filter(|c| !c.is_complete()).count() as u64;
    let max = binomial(n as u64 - 1, r as u64 - 1) as f64;
    let delta = (1.0 - g.len() as f64 / max).max(0.0);
    let orders = factorial_u64(n - 1) as f64;
    let bound = r as f64 * orders - (1.0 - delta) * (factorial_u64(r) * factorial_u64(n - r)) as f64 * max;
    let delta_bound = delta * r as f64 * orders;
    let tol = 1e-9 * orders;
    Ok(IncompleteReport {
        n,
        r,
        delta,
        incomplete,
        bound,
        delta_bound,
        holds: incomplete as f64 <= bound + tol && incomplete as f64 <= delta_bound + tol,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalFamilyReport {
    pub n: usize,
    pub r: usize,
    pub max_size: usize,
    /// One maximum intersecting family of intervals.
    pub witness: Vec<u64>,
    /// Number of maximum families.
    pub maxima: usize,
    /// Every maximum family has a common point.
    pub all_maxima_centered: bool,
    /// At size `r`, the families with a common point are exactly the maxima.
    pub characterization_holds: bool,
}

/// Largest intersecting family of `r`-intervals of `σ`, by exhaustion over
/// all `2^n` subsets of intervals.
pub fn max_interval_family(sigma: &CyclicOrder, r: usize) -> Result<IntervalFamilyReport> {
    let n = sigma.n();
    if r == 0 || 2 * r >= n {
        return domain("interval family bound requires 1 <= r < n/2");
    }
    if n > 24 {
        return domain("interval family exhaustion is limited to n <= 24");
    }
    let sets = distinct_intervals(sigma, r)?;
    let k = sets.len();
    let clash: Vec<u32> = sets
        .iter()
        .map(|&a| sets.iter().enumerate().filter(|(_, &b)| a & b == 0).fold(0u32, |m, (j, _)| m | 1 << j))
        .collect();
    let mut max_size = 0;
    let mut maxima = Vec::new();
    let mut centered_at_r = 0usize;
    let mut intersecting_at_r = 0usize;
    for pick in 0u32..1 << k {
        let ok = bits::iter_bits(pick as u64).all(|i| clash[i] & pick == 0);
        if !ok {
            continue;
        }
        let size = pick.count_ones() as usize;
        let common = bits::iter_bits(pick as u64).fold(low_mask(n), |a, i| a & sets[i]);
        if size == r {
            intersecting_at_r += 1;
            if common != 0 {
                centered_at_r += 1;
            }
        }
        if size > max_size {
            max_size = size;
            maxima.clear();
        }
        if size == max_size {
            maxima.push(pick);
        }
    }
    let family = |pick: u32| bits::iter_bits(pick as u64).map(|i| sets[i]).collect::<Vec<u64>>();
    let all_maxima_centered = maxima
        .iter()
        .all(|&p| bits::iter_bits(p as u64).fold(low_mask(n), |a, i| a & sets[i]) != 0);
    Ok(IntervalFamilyReport {
        n,
        r,
        max_size,
        witness: family(maxima[0]),
        maxima: maxima.len(),
        all_maxima_centered,
        characterization_holds: max_size == r && all_maxima_centered && centered_at_r == intersecting_at_r,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCounterexample {
    pub sigma: Vec<usize>,
    pub position: usize,
    pub v: usize,
    pub tau_center: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub n: usize,
    pub r: usize,
    /// Pairs `(σ, i)` where `σ` is `v`-complete, `τ` is complete, and the swap
    /// leaves the position of `v` untouched.
    pub checked: u64,
    /// Pairs skipped because the swap moves `v`.
    pub excluded: u64,
    pub counterexamples: Vec<ClaimCounterexample>,
    pub holds: bool,
}

/// Checks that swapping two consecutive entries, neither of them `v`, turns a
/// `v`-complete order into a `v`-complete one whenever the result is complete.
pub fn transposition_claim_check(g: &KGraph) -> Result<ClaimReport> {
    let (n, r) = (g.n(), g.r());
    if n > CLAIM_CAP {
        return domain(format!("transposition claim check is limited to n <= {CLAIM_CAP}"));
    }
    if r == 0 || 2 * r >= n {
        return domain("cyclic-order regime requires r < n/2");
    }
    if !is_intersecting(g) {
        return precondition("family is not intersecting");
    }
    let classes = classify_all(g)?;
    let per_order: Vec<(u64, u64, Vec<ClaimCounterexample>)> = (0..factorial_u64(n - 1))
        .into_par_iter()
        .map(|k| {
            let c = classes[k as usize];
            let Some(v) = c.center.filter(|_| c.is_complete()) else {
                return (0, 0, Vec::new());
            };
            let sigma = CyclicOrder::from_rank(k, n);
            let pv = sigma.position(v);
            let (mut checked, mut excluded, mut bad) = (0, 0, Vec::new());
            for i in 0..n {
                if i == pv || (i + 1) % n == pv {
                    excluded += 1;
                    continue;
                }
                let tau = classes[sigma.swap_adjacent(i).rank() as usize];
                if !tau.is_complete() {
                    continue;
                }
                checked += 1;
                if tau.center != Some(v) {
                    bad.push(ClaimCounterexample { sigma: sigma.perm().to_vec(), position: i, v, tau_center: tau.center });
                }
            }
            (checked, excluded, bad)
        })
        .collect();
    let checked = per_order.iter().map(|t| t.0).sum();
    let excluded = per_order.iter().map(|t| t.1).sum();
    let counterexamples: Vec<ClaimCounterexample> = per_order.into_iter().flat_map(|t| t.2).collect();
    Ok(ClaimReport { n, r, checked, excluded, holds: counterexamples.is_empty(), counterexamples })
}
