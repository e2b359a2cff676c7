//! Inclusion matrices `M^r_s(G)`: rows are edges, columns are all `s`-subsets
//! of the vertex set in colex order, and an entry is 1 when the column set
//! lies inside the row edge.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{self, colex_rank};
use crate::error::{domain, Result};
use crate::gbinom::{binomial, gbinom, solve_x};
use crate::kgraph::KGraph;
use crate::rank::{rank_exact, RankResult};

/// Largest `n` for the closed-form rank check on complete graphs.
pub const GOTTLIEB_CAP: usize = 9;
/// Seed of the cross-check prime unless a caller supplies one.
pub const DEFAULT_PRIME_SEED: u64 = 0x1_0000_0061;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclusionMatrix {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    /// Row edges.
    pub rows: Vec<u64>,
    /// For each row, the colex indices of the columns holding a 1 (ascending).
    pub support: Vec<Vec<usize>>,
    pub cols: usize,
}

pub fn inclusion_matrix(g: &KGraph, s: usize) -> Result<InclusionMatrix> {
    let (n, r) = (g.n(), g.r());
    if s > r {
        return domain(format!("inclusion matrix needs 0 <= s <= r, got s = {s}, r = {r}"));
    }
    let support = g
        .edges()
        .iter()
        .map(|&e| {
            let mut idx: Vec<usize> = bits::subsets_of_size(e, s).into_iter().map(|t| colex_rank(t) as usize).collect();
            idx.sort_unstable();
            idx
        })
        .collect();
    Ok(InclusionMatrix { n, r, s, rows: g.edges().to_vec(), support, cols: binomial(n as u64, s as u64) as usize })
}

impl InclusionMatrix {
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn dense(&self) -> Vec<Vec<i64>> {
        self.support
            .iter()
            .map(|idx| {
                let mut row = vec![0i64; self.cols];
                for &c in idx {
                    row[c] = 1;
                }
                row
            })
            .collect()
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.support[row].binary_search(&col).is_ok() as i64
    }

    /// Columns with at least one 1; their count is `|∂^r_s G|`.
    pub fn nonzero_columns(&self) -> usize {
        let mut seen = vec![false; self.cols];
        for idx in &self.support {
            for &c in idx {
                seen[c] = true;
            }
        }
        seen.into_iter().filter(|&b| b).count()
    }

    pub fn rank(&self) -> Result<RankResult> {
        rank_exact(&self.dense(), DEFAULT_PRIME_SEED)
    }
}

pub fn rank_of(g: &KGraph, s: usize) -> Result<usize> {
    Ok(inclusion_matrix(g, s)?.rank()?.rank)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GottliebReport {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub rank: usize,
    pub expected: u128,
    pub holds: bool,
}

/// Rank of `M^r_s(K^r_n)` against `min{C(n,r), C(n,s)}`.
pub fn gottlieb_check(n: usize, r: usize, s: usize) -> Result<GottliebReport> {
    if n > GOTTLIEB_CAP {
        return domain(format!("complete-graph rank check is limited to n <= {GOTTLIEB_CAP}"));
    }
    if s > r || r > n {
        return domain("need 0 <= s <= r <= n");
    }
    let rank = rank_of(&KGraph::complete(n, r)?, s)?;
    let expected = binomial(n as u64, r as u64).min(binomial(n as u64, s as u64));
    Ok(GottliebReport { n, r, s, rank, expected, holds: rank as u128 == expected })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub t: usize,
    pub u: usize,
    pub rows: usize,
    pub mismatches: usize,
    pub holds: bool,
}

/// Entrywise check of `M^t_u(H) M^u_{u-1}(K) = (t-u+1) M^t_{u-1}(H)` with
/// `K` the complete `u`-graph on `V(H)`.
pub fn inclusion_identity_check(h: &KGraph, u: usize) -> Result<IdentityReport> {
    let t = h.r();
    if u == 0 || u > t {
        return domain("inclusion identity needs 1 <= u <= t");
    }
    let left = inclusion_matrix(h, u)?;
    let right = inclusion_matrix(&KGraph::complete(h.n(), u)?, u - 1)?;
    let target = inclusion_matrix(h, u - 1)?;
    let scale = (t - u + 1) as i64;
    let mut mismatches = 0;
    for i in 0..left.row_count() {
        let mut prod = vec![0i64; target.cols];
        // rows of M^u_{u-1}(K) are indexed by colex rank of u-sets
        for &k in &left.support[i] {
            for &c in &right.support[k] {
                prod[c] += 1;
            }
        }
        mismatches += (0..target.cols).filter(|&c| prod[c] != scale * target.entry(i, c)).count();
    }
    Ok(IdentityReport { t, u, rows: left.row_count(), mismatches, holds: mismatches == 0 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionReport {
    pub x: usize,
    pub s: usize,
    pub rank: usize,
    /// `rk M^r_s(G∖x) + rk M^{r-1}_{s-1}(G/x)`.
    pub first: usize,
    /// `rk M^r_{s-1}(G∖x) + rk M^{r-1}_s(G/x)`.
    pub second: usize,
    pub inequality_holds: bool,
    /// Rows through `x` against columns through `x` form `M^{r-1}_{s-1}(G/x)`,
    /// rows through `x` against the rest form `M^{r-1}_s(G/x)`, rows avoiding
    /// `x` meet columns through `x` in zeros and the rest in `M^r_s(G∖x)`.
    pub block_form_holds: bool,
}

/// The rank inequality for deleting and contracting a vertex `x`.
pub fn rank_recursion_check(g: &KGraph, x: usize, s: usize) -> Result<RecursionReport> {
    let r = g.r();
    if s == 0 || s + 1 > r {
        return domain("rank recursion needs 1 <= s <= r - 1");
    }
    if x >= g.n() {
        return domain(format!("vertex {x} out of range"));
    }
    let del = g.delete(x)?;
    let con = g.contract(x)?;
    let rank = rank_of(g, s)?;
    let first = rank_of(&del, s)? + rank_of(&con, s - 1)?;
    let second = rank_of(&del, s - 1)? + rank_of(&con, s)?;

    let m = inclusion_matrix(g, s)?;
    let m_del = inclusion_matrix(&del, s)?;
    let m_con_lo = inclusion_matrix(&con, s - 1)?;
    let m_con = inclusion_matrix(&con, s)?;
    let xb = 1u64 << x;
    let cols = bits::k_subsets(g.n(), s);
    let mut block_form_holds = true;
    for (i, &e) in m.rows.iter().enumerate() {
        for (c, &set) in cols.iter().enumerate() {
            let v = m.entry(i, c);
            let expected = match (e & xb != 0, set & xb != 0) {
                (true, true) => {
                    let ri = m_con_lo.rows.binary_search(&(e & !xb)).expect("link edge");
                    m_con_lo.entry(ri, colex_rank(set & !xb) as usize)
                }
                (true, false) => {
                    let ri = m_con.rows.binary_search(&(e & !xb)).expect("link edge");
                    m_con.entry(ri, c)
                }
                (false, true) => 0,
                (false, false) => {
                    let ri = m_del.rows.binary_search(&e).expect("kept edge");
                    m_del.entry(ri, c)
                }
            };
            block_form_holds &= v == expected;
        }
    }
    Ok(RecursionReport {
        x,
        s,
        rank,
        first,
        second,
        inequality_holds: rank >= first.max(second),
        block_form_holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RobustnessReport {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub removed: usize,
    /// `|F| C(r,s) < C(n, r-s)`.
    pub hypothesis_met: bool,
    pub rank: usize,
    pub full: u128,
    pub full_rank: bool,
    /// Full rank whenever the hypothesis holds.
    pub holds: bool,
}

/// Rank of `M^r_s(K^r_n ∖ F)`.
pub fn full_rank_robustness(n: usize, r: usize, s: usize, f: &KGraph) -> Result<RobustnessReport> {
    if s > r || 2 * r >= n {
        return domain("rigidity needs 0 <= s <= r < n/2");
    }
    if f.n() != n || f.r() != r {
        return domain("removed family must be an r-graph on n vertices");
    }
    let g = KGraph::complete(n, r)?.difference(f);
    let rank = rank_of(&g, s)?;
    let full = binomial(n as u64, s as u64);
    let hypothesis_met = f.len() as u128 * binomial(r as u64, s as u64) < binomial(n as u64, (r - s) as u64);
    let full_rank = rank as u128 == full;
    Ok(RobustnessReport {
        n,
        r,
        s,
        removed: f.len(),
        hypothesis_met,
        rank,
        full,
        full_rank,
        holds: !hypothesis_met || full_rank,
    })
}

/// All `r`-sets containing the `s`-set `core`: removing them leaves the
/// column of `core` empty.
pub fn tightness_family(n: usize, r: usize, core: u64) -> Result<KGraph> {
    KGraph::new(n, r, bits::k_subsets(n, r).into_iter().filter(|&e| e & core == core))
}

/// Largest `|F|` meeting the rigidity hypothesis.
pub fn rigidity_threshold(n: usize, r: usize, s: usize) -> u128 {
    let (num, den) = (binomial(n as u64, (r - s) as u64), binomial(r as u64, s as u64));
    (num - 1) / den
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub size: usize,
    pub instances: usize,
    pub satisfied: usize,
    pub violations: usize,
    pub equalities: usize,
    /// Equalities where `x` is not an integer.
    pub fractional_equalities: usize,
    /// Largest `C(x, s) - rank` among violations.
    pub worst_deficit: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub r: usize,
    pub s: usize,
    pub n: usize,
    pub exhaustive: bool,
    pub rows: Vec<ProbeRow>,
    /// Smallest size from which no violation was observed up to the end of
    /// the range.
    pub onset: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraicCheck {
    pub edges: usize,
    pub x: f64,
    pub rank: usize,
    pub bound: f64,
    pub satisfied: bool,
    pub equality: bool,
    pub integral_x: bool,
}

/// Compares `rk M^r_s(G)` with `C(x, s)` where `|G| = C(x, r)`.
pub fn algebraic_check(g: &KGraph, s: usize) -> Result<AlgebraicCheck> {
    let x = solve_x(g.len() as u64, g.r())?;
    let rank = rank_of(g, s)?;
    let bound = gbinom(x, s);
    let tol = 1e-9 * bound.abs().max(1.0);
    Ok(AlgebraicCheck {
        edges: g.len(),
        x,
        rank,
        bound,
        satisfied: rank as f64 + tol >= bound,
        equality: (rank as f64 - bound).abs() <= tol,
        integral_x: x.fract() == 0.0,
    })
}

/// Rank against `C(x, s)` over `r`-graphs on `n` vertices with sizes in
/// `sizes`. Exhaustive when `r = 2` and `n <= 6`, otherwise `samples` random
/// graphs per size from `seed`. Violations are recorded, never asserted.
pub fn kk_alg_probe(
    r: usize,
    s: usize,
    sizes: std::ops::RangeInclusive<usize>,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<ProbeReport> {
    if !(r > s && s > 0) {
        return domain("probe needs r > s > 0");
    }
    if r > n {
        return domain("probe needs r <= n");
    }
    let all = bits::k_subsets(n, r);
    let exhaustive = r == 2 && n <= 6;
    let sizes: Vec<usize> = sizes.filter(|&m| m >= 1 && m <= all.len()).collect();
    let rows: Vec<ProbeRow> = sizes
        .par_iter()
        .map(|&m| {
            let graphs: Vec<KGraph> = if exhaustive {
                bits::k_subsets(all.len(), m)
                    .into_iter()
                    .map(|pick| KGraph::new(n, r, bits::iter_bits(pick).map(|i| all[i])).expect("valid"))
                    .collect()
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (m as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
                (0..samples)
                    .map(|_| {
                        let pick = sample(&mut rng, all.len(), m);
                        KGraph::new(n, r, pick.into_iter().map(|i| all[i])).expect("valid")
                    })
                    .collect()
            };
            let mut row = ProbeRow {
                size: m,
                instances: graphs.len(),
                satisfied: 0,
                violations: 0,
                equalities: 0,
                fractional_equalities: 0,
                worst_deficit: 0.0,
            };
            for g in &graphs {
                let c = algebraic_check(g, s).expect("valid probe instance");
                if c.satisfied {
                    row.satisfied += 1;
                } else {
                    row.violations += 1;
                    row.worst_deficit = row.worst_deficit.max(c.bound - c.rank as f64);
                }
                if c.equality {
                    row.equalities += 1;
                    if !c.integral_x {
                        row.fractional_equalities += 1;
                    }
                }
            }
            row
        })
        .collect();
    let onset = rows.iter().rposition(|row| row.violations > 0).map_or(rows.first().map(|r| r.size), |i| {
        rows.get(i + 1).map(|r| r.size)
    });
    Ok(ProbeReport { r, s, n, exhaustive, rows, onset })
}
