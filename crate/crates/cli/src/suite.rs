//! Property suites for every module, run by `verify-suite`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use clap::ValueEnum;
use extremal::bits::{self, k_subsets};
use extremal::cayley::{build_cayley, complete_component, expansion_check, second_eigenvalue};
use extremal::colex::{cascade, colex_segment, kk_exact_shadow_bound};
use extremal::cyclic::{all_orders, intervals, katona_identity_check, max_interval_family, restrict, transposition_claim_check};
use extremal::ekr::{complement_pair, ekr_check, intersecting_families_of_size, intersecting_iff_cliques, is_intersecting, stability_certificate};
use extremal::enumerate::GraphSpace;
use extremal::estimates::{
    check_bin_diff, check_bin_shadow, check_fact, check_vandermonde, consistent_u, x_r_after_substitution, Fact, ShadowMode,
};
use extremal::gbinom::{binomial, gbinom, gbinom_derivative, solve_x};
use extremal::incmat::{
    full_rank_robustness, gottlieb_check, inclusion_identity_check, inclusion_matrix, kk_alg_probe, rank_recursion_check,
    rigidity_threshold, tightness_family,
};
use extremal::kkbound::{chained_clique_check, iterated_shadow_check, lovasz_check, shadow_check};
use extremal::rank::rank_exact;
use extremal::stability::{classify_degrees, clique_hypergraph, extract_stability};
use extremal::{gen, KGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::commands::run_command;
use crate::document::HypergraphDocument;
use crate::report::{Check, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Smoke,
    Desk,
    Deep,
}

impl Level {
    /// Picks a size parameter for this level.
    fn pick<T>(self, smoke: T, desk: T, deep: T) -> T {
        match self {
            Level::Smoke => smoke,
            Level::Desk => desk,
            Level::Deep => deep,
        }
    }
}

/// Every operation each module must exercise.
pub const MANIFEST: &[(&str, &[&str])] = &[
    ("cayley", &["build_cayley", "second_eigenvalue", "expansion_check", "complete_component"]),
    ("cli", &["parse_hypergraph", "run_command"]),
    (
        "core",
        &["shadow", "s_shadow", "count_cliques", "link", "delete", "contract", "colex_segment", "cascade", "kk_exact_shadow_bound"],
    ),
    ("cyclic", &["intervals", "restrict", "katona_identity_check", "max_interval_family", "transposition_claim_check"]),
    ("ekr", &["is_intersecting", "ekr_check", "complement_pair", "intersecting_iff_cliques", "stability_certificate"]),
    (
        "gbinom",
        &["gbinom", "solve_x", "gbinom_derivative", "check_vandermonde", "check_facts", "check_bin_diff", "check_bin_shadow"],
    ),
    (
        "incmat",
        &[
            "inclusion_matrix",
            "rank_exact",
            "gottlieb_check",
            "inclusion_identity_check",
            "rank_recursion_check",
            "full_rank_robustness",
            "kk_alg_probe",
        ],
    ),
    ("kkbound", &["lovasz_check", "shadow_check", "iterated_shadow_check", "chained_clique_check"]),
    ("kkstab", &["classify_degrees", "clique_hypergraph", "extract_stability"]),
];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: extremal::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: Vec<Check>,
    /// Operation name to the checks that exercise it.
    pub coverage: BTreeMap<&'static str, Vec<String>>,
}

struct Suite {
    result: SuiteResult,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite { result: SuiteResult { name, checks: Vec::new(), coverage: BTreeMap::new() } }
    }

    fn run(&mut self, ops: &[&'static str], name: &str, f: impl FnOnce() -> Outcome) {
        let (passed, detail) = match f() {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        for op in ops {
            self.result.coverage.entry(op).or_default().push(name.to_string());
        }
        self.result.checks.push(Check { name: name.to_string(), passed, detail });
    }
}

fn random_graphs(level: Level, seed: u64, r_max: usize) -> Vec<KGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = level.pick(30, 300, 3000);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(3..=8usize);
            let r = rng.gen_range(1..=r_max.min(n));
            let total = binomial(n as u64, r as u64) as usize;
            gen::random(n, r, rng.gen_range(0..=total), rng.gen()).unwrap()
        })
        .collect()
}

fn core_suite(level: Level, seed: u64) -> SuiteResult {
    let mut s = Suite::new("core");
    let graphs = random_graphs(level, seed ^ 0xc0, 4);
    s.run(&["shadow", "s_shadow"], "shadows match brute force", || {
        for g in &graphs {
            for k in 0..=g.r() {
                let truth: HashSet<u64> = g.edges().iter().flat_map(|&e| bits::subsets_of_size(e, k)).collect();
                ensure(lib(g.s_shadow(k))?.len() == truth.len(), || format!("{:?} s={k}", g.edge_lists()))?;
            }
            if g.r() > 0 {
                ensure(lib(g.shadow())? == lib(g.s_shadow(g.r() - 1))?, || "shadow is the (r-1)-shadow".into())?;
            }
        }
        Ok(format!("{} graphs", graphs.len()))
    });
    s.run(&["count_cliques"], "clique counts match brute force", || {
        for g in &graphs {
            for m in g.r()..=g.n().min(g.r() + 2) {
                let brute = k_subsets(g.n(), m)
                    .into_iter()
                    .filter(|&set| bits::subsets_of_size(set, g.r()).into_iter().all(|e| g.contains(e)))
                    .count() as u64;
                ensure(lib(g.count_cliques(m))? == brute, || format!("{:?} m={m}", g.edge_lists()))?;
            }
        }
        Ok(format!("{} graphs", graphs.len()))
    });
    s.run(&["link", "delete", "contract"], "edges split between deletion and link", || {
        for g in graphs.iter().filter(|g| g.r() > 0) {
            for v in 0..g.n() {
                let (d, l) = (lib(g.delete(v))?, lib(g.link(v))?);
                ensure(d.len() + l.len() == g.len() && l.len() == g.degree(v), || format!("{:?} v={v}", g.edge_lists()))?;
                ensure(lib(g.contract(v))? == l, || "contraction equals link".into())?;
            }
        }
        Ok(format!("{} graphs", graphs.len()))
    });
    let m_max = level.pick(60u64, 200, 400);
    s.run(&["colex_segment", "cascade", "kk_exact_shadow_bound"], "colex segments attain the cascade bound", || {
        for r in 1..=4usize {
            for m in 1..=if r == 1 { 64 } else { m_max } {
                let c = lib(cascade(m as u128, r))?;
                ensure(c.is_well_formed() && c.value() == m as u128, || format!("cascade m={m} r={r}"))?;
                let g = lib(colex_segment(r, m))?;
                for k in 0..=r {
                    let bound = lib(kk_exact_shadow_bound(m as u128, r, k))?;
                    ensure(lib(g.s_shadow(k))?.len() as u128 == bound, || format!("r={r} m={m} s={k}"))?;
                }
            }
        }
        Ok(format!("m <= {m_max}, r <= 4"))
    });
    s.run(&["kk_exact_shadow_bound"], "random graphs respect the exact bound", || {
        for g in graphs.iter().filter(|g| g.r() > 0) {
            for k in 0..=g.r() {
                let bound = lib(kk_exact_shadow_bound(g.len() as u128, g.r(), k))?;
                ensure(lib(g.s_shadow(k))?.len() as u128 >= bound, || format!("{:?} s={k}", g.edge_lists()))?;
            }
        }
        Ok(format!("{} graphs", graphs.len()))
    });
    s.result
}

fn derivative_oracle(x: f64, r: usize) -> f64 {
    let fact: f64 = (1..=r).map(|i| i as f64).product();
    (0..r).map(|k| (0..r).filter(|&i| i != k).map(|i| x - i as f64).product::<f64>()).sum::<f64>() / fact
}

fn gbinom_suite(level: Level, seed: u64) -> SuiteResult {
    let mut s = Suite::new("gbinom");
    let points = level.pick(100, 1000, 10_000);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9b);
    s.run(&["gbinom"], "integer points match binomials", || {
        for n in 0..30u64 {
            for k in 0..=n.min(8) {
                let want = binomial(n, k) as f64;
                ensure((gbinom(n as f64, k as usize) - want).abs() <= 1e-9 * want.max(1.0), || format!("C({n},{k})"))?;
            }
        }
        Ok("n < 30, k <= 8".into())
    });
    let sample: Vec<(u64, usize)> = (0..points).map(|_| (rng.gen_range(1..10_000_000), rng.gen_range(1..=6))).collect();
    s.run(&["solve_x", "gbinom"], "solve_x inverts gbinom", || {
        for &(m, r) in &sample {
            let x = lib(solve_x(m, r))?;
            let rel = (gbinom(x, r) - m as f64).abs() / m as f64;
            ensure(rel < 1e-9 && x >= r as f64 - 1.0, || format!("m={m} r={r}: rel {rel:e}"))?;
        }
        Ok(format!("{points} points"))
    });
    let derivs: Vec<(f64, usize)> = (0..points)
        .map(|_| {
            let r = rng.gen_range(1..=6usize);
            (rng.gen_range(r as f64..r as f64 + 20.0), r)
        })
        .collect();
    s.run(&["gbinom_derivative"], "derivative matches the product rule", || {
        for &(x, r) in &derivs {
            let (a, b) = (gbinom_derivative(x, r), derivative_oracle(x, r));
            ensure((a - b).abs() <= 1e-9 * b.abs().max(1.0), || format!("x={x} r={r}"))?;
        }
        Ok(format!("{points} points"))
    });
    let vpts: Vec<(f64, f64, usize)> =
        (0..points).map(|_| (rng.gen_range(-5.0..15.0), rng.gen_range(-5.0..15.0), rng.gen_range(0..=6))).collect();
    s.run(&["check_vandermonde"], "Vandermonde identity", || {
        for &(x, y, r) in &vpts {
            ensure(check_vandermonde(x, y, r).satisfied, || format!("x={x} y={y} r={r}"))?;
        }
        Ok(format!("{points} points"))
    });
    s.run(&["check_facts"], "elementary estimates", || {
        let facts = [
            Fact::ScaledBinomial { theta: 0.5, x: 10.0, n: 3 },
            Fact::RatioBracket { a: 9.0, b: 6.5, n: 3 },
            Fact::LinearizedPower { theta: 0.1, n: 3 },
            Fact::PowerBelowTwo { theta: 0.2, n: 2 },
            Fact::RootAboveLine { theta: 0.4, n: 2 },
        ];
        for f in facts {
            ensure(lib(check_fact(f))?.satisfied, || format!("{f:?}"))?;
        }
        Ok("5 facts".into())
    });
    let dpts: Vec<(f64, f64, usize)> = (0..points)
        .map(|_| {
            let r = rng.gen_range(2..=6usize);
            let y = rng.gen_range(r as f64 - 1.0..r as f64 + 30.0);
            (y + rng.gen_range(0.01..20.0), y, r)
        })
        .collect();
    s.run(&["check_bin_diff"], "difference bounds", || {
        for &(x, y, r) in &dpts {
            ensure(lib(check_bin_diff(x, y, r))?.satisfied, || format!("x={x} y={y} r={r}"))?;
        }
        Ok(format!("{points} points"))
    });
    let triples: Vec<(f64, f64, usize)> = (0..points)
        .map(|_| {
            let r = rng.gen_range(3..=5usize);
            let v = rng.gen_range(r as f64..r as f64 + 12.0);
            (v, rng.gen_range(r as f64 - 1.0..v), r)
        })
        .collect();
    s.run(&["check_bin_shadow"], "shadow-defect statements evaluate on consistent triples", || {
        let mut met = 0;
        for &(v, w, r) in &triples {
            let u = lib(consistent_u(v, w, r))?;
            let res = x_r_after_substitution(u, v, w, r).abs() / gbinom(u, r).max(1.0);
            ensure(res < 1e-8, || format!("u={u} v={v} w={w} r={r}: residual {res:e}"))?;
            for mode in [ShadowMode::Defect, ShadowMode::Level] {
                let c = lib(check_bin_shadow(u, v, w, r, 1, mode))?;
                ensure(c.margin.is_finite(), || format!("{mode:?} margin"))?;
                met += c.hypotheses_met as usize;
            }
        }
        // the quadratic case with its worked triple
        let u = lib(consistent_u(9.0, 8.0, 2))?;
        ensure(lib(check_bin_shadow(u, 9.0, 8.0, 2, 1, ShadowMode::Quadratic { c: 1.0 }))?.satisfied, || "quadratic".into())?;
        Ok(format!("{points} triples, hypotheses met {met} times (margins reported only)"))
    });
    s.result
}

fn kkbound_suite(level: Level, seed: u64) -> SuiteResult {
    let mut s = Suite::new("kkbound");
    let spaces: Vec<(usize, usize)> = level.pick(vec![(5, 2), (4, 3)], vec![(6, 2), (5, 3)], vec![(7, 2), (6, 3)]);
    for (n, r) in spaces {
        s.run(&["lovasz_check", "shadow_check"], &format!("exhaustive {r}-graphs on {n} vertices"), || {
            let space = lib(GraphSpace::new(n, r))?;
            let bad: Vec<String> = space
                .par_map(|_, g| {
                    if g.is_empty() {
                        return None;
                    }
                    let lov = lovasz_check(g).ok()?;
                    let sh = shadow_check(g).ok()?;
                    let complete = extremal::kkbound::complete_witness(g).is_some();
                    (!lov.satisfied || lov.equality != complete || !sh.satisfied || !sh.containment_holds)
                        .then(|| format!("{:?}", g.edge_lists()))
                })
                .into_iter()
                .flatten()
                .take(3)
                .collect();
            ensure(bad.is_empty(), || bad.join("; "))?;
            Ok(format!("{} graphs", space.count()))
        });
    }
    let graphs = random_graphs(level, seed ^ 0xbb, 4);
    s.run(&["iterated_shadow_check"], "iterated shadows", || {
        for g in graphs.iter().filter(|g| g.r() > 0 && !g.is_empty()) {
            for k in 0..g.r() {
                ensure(lib(iterated_shadow_check(g, k))?.satisfied, || format!("{:?} s={k}", g.edge_lists()))?;
            }
        }
        Ok(format!("{} graphs", graphs.len()))
    });
    s.run(&["chained_clique_check"], "chained clique bounds", || {
        for g in graphs.iter().filter(|g| g.r() > 0 && !g.is_empty() && g.r() + 2 <= g.n()) {
            let c = lib(chained_clique_check(g, g.r(), g.r() + 2))?;
            ensure(c.satisfied && c.routes_agree, || format!("{:?}", g.edge_lists()))?;
        }
        Ok(format!("{} graphs", graphs.len()))
    });
    s.result
}

fn kkstab_suite(level: Level, _seed: u64) -> SuiteResult {
    let mut s = Suite::new("kkstab");
    let x_max = level.pick(6usize, 7, 8);
    let mut instances = Vec::new();
    for r in 2..=3usize {
        for x in r + 1..=x_max {
            let full = KGraph::complete(x, r).unwrap();
            for k in 0..=level.pick(1usize, 2, 3).min(full.len()) {
                for pick in k_subsets(full.len(), k) {
                    let gone = KGraph::new(x, r, bits::iter_bits(pick).map(|i| full.edges()[i])).unwrap();
                    instances.push(full.difference(&gone));
                }
            }
        }
    }
    s.run(&["clique_hypergraph"], "clique hypergraph counts cliques", || {
        for g in &instances {
            ensure(lib(clique_hypergraph(g))?.len() as u64 == lib(g.count_cliques(g.r() + 1))?, || format!("{:?}", g.edge_lists()))?;
        }
        Ok(format!("{} instances", instances.len()))
    });
    s.run(&["classify_degrees"], "degree classes are well formed", || {
        for g in &instances {
            let x = lib(solve_x(g.len() as u64, g.r()))?;
            if x < g.r() as f64 {
                continue;
            }
            let c = lib(classify_degrees(g, x, 0.01))?;
            ensure(c.a0 & !c.a == 0 && c.b0 & !c.b == 0 && c.a & c.b == 0, || format!("{:?}: {c:?}", g.edge_lists()))?;
        }
        Ok(format!("{} instances", instances.len()))
    });
    s.run(&["extract_stability"], "stability statements on near-complete graphs", || {
        let mut checked = 0;
        for g in &instances {
            match extract_stability(g, 0.25) {
                Ok(rep) => {
                    ensure(rep.statements.all(), || format!("{:?}: {:?}", g.edge_lists(), rep.statements))?;
                    checked += 1;
                }
                Err(extremal::Error::Precondition(_)) => {}
                Err(e) => return Err(e.to_string()),
            }
        }
        Ok(format!("{checked} instances with cliques"))
    });
    s.result
}

fn perturbed(n_max: usize) -> Vec<KGraph> {
    let mut out = Vec::new();
    for n in 3..=n_max {
        for r in 1..n {
            if 2 * r >= n {
                break;
            }
            for removed in 0..=2 {
                for foreign in 0..=2 {
                    out.push(gen::star_perturbed(n, r, removed % n, removed, foreign, (n * 7 + r + foreign) as u64).unwrap());
                }
            }
        }
    }
    out
}

fn ekr_suite(level: Level, _seed: u64) -> SuiteResult {
    let mut s = Suite::new("ekr");
    let n_max = level.pick(6usize, 8, 9);
    s.run(&["ekr_check", "is_intersecting"], "maximum intersecting families are stars", || {
        let mut total = 0;
        for n in 2..=n_max {
            for r in 1..n {
                if 2 * r >= n {
                    break;
                }
                let size = binomial(n as u64 - 1, r as u64 - 1) as usize;
                let fams = lib(intersecting_families_of_size(n, r, size))?;
                ensure(fams.len() == n, || format!("n={n} r={r}: {} maxima", fams.len()))?;
                for f in &fams {
                    let rep = lib(ekr_check(f))?;
                    ensure(is_intersecting(f) && rep.at_equality && rep.uniqueness_holds, || format!("n={n} r={r}"))?;
                }
                total += fams.len();
            }
        }
        Ok(format!("{total} maxima for n <= {n_max}"))
    });
    s.run(&["complement_pair", "intersecting_iff_cliques"], "complement equivalence over all small graphs", || {
        let space = lib(GraphSpace::new(level.pick(5, 6, 6), 2))?;
        for g in space.iter() {
            let (h, j) = lib(complement_pair(&g))?;
            ensure(h.len() + g.len() == binomial(g.n() as u64, 2) as usize && j.len() == g.len(), || "sizes".into())?;
            let rep = lib(intersecting_iff_cliques(&g))?;
            ensure(rep.equivalence_holds && rep.intersecting == is_intersecting(&g), || format!("{:?}", g.edge_lists()))?;
        }
        Ok(format!("{} graphs", space.count()))
    });
    let family = perturbed(level.pick(7, 10, 12));
    s.run(&["stability_certificate"], "stability certificates on perturbed stars", || {
        let mut met = 0;
        for g in &family {
            let c = lib(stability_certificate(g))?;
            ensure(!c.clique_route_hypothesis || c.clique_route_conclusion, || format!("{:?}", g.edge_lists()))?;
            ensure(!c.cayley_route_hypothesis || c.cayley_route_conclusion, || format!("{:?}", g.edge_lists()))?;
            met += c.clique_route_hypothesis as usize;
        }
        Ok(format!("{} families, {met} meet the hypotheses", family.len()))
    });
    s.result
}

fn cyclic_suite(level: Level, seed: u64) -> SuiteResult {
    let mut s = Suite::new("cyclic");
    let n_max = level.pick(5usize, 6, 7);
    s.run(&["intervals", "max_interval_family"], "interval maxima are r and centered", || {
        let mut count = 0;
        for n in 3..=n_max {
            for sigma in all_orders(n) {
                for r in 1..n {
                    ensure(lib(intervals(&sigma, r))?.len() == n, || "n intervals".into())?;
                    if 2 * r >= n {
                        continue;
                    }
                    let rep = lib(max_interval_family(&sigma, r))?;
                    ensure(rep.max_size == r && rep.characterization_holds, || format!("{:?} r={r}", sigma.perm()))?;
                    count += 1;
                }
            }
        }
        Ok(format!("{count} (order, r) pairs"))
    });
    let graphs = random_graphs(level.pick(Level::Smoke, Level::Smoke, Level::Desk), seed ^ 0xcc, 3);
    s.run(&["katona_identity_check"], "counting identity", || {
        let mut count = 0;
        for g in graphs.iter().filter(|g| g.r() >= 1 && g.r() < g.n() && g.n() <= n_max) {
            let rep = lib(katona_identity_check(g))?;
            ensure(rep.holds, || format!("{:?}", g.edge_lists()))?;
            count += 1;
        }
        Ok(format!("{count} graphs"))
    });
    let family = perturbed(n_max);
    s.run(&["restrict"], "restrictions hold at most r intervals for intersecting families", || {
        for g in family.iter().filter(|g| g.n() <= 6) {
            for sigma in all_orders(g.n()) {
                let (members, _) = lib(restrict(g, &sigma))?;
                ensure(members.len() <= g.r(), || format!("{:?} {:?}", g.edge_lists(), sigma.perm()))?;
            }
        }
        Ok(format!("{} families", family.len()))
    });
    s.run(&["transposition_claim_check"], "transposition claim on perturbed stars", || {
        let mut checked = 0;
        for g in &family {
            let rep = lib(transposition_claim_check(g))?;
            ensure(rep.holds, || format!("{:?}: {:?}", g.edge_lists(), rep.counterexamples.first()))?;
            checked += rep.checked;
        }
        Ok(format!("{} families, {checked} admissible pairs", family.len()))
    });
    s.result
}

fn cayley_suite(level: Level, seed: u64) -> SuiteResult {
    let mut s = Suite::new("cayley");
    let n_max = level.pick(5usize, 7, 8);
    s.run(&["build_cayley", "second_eigenvalue"], "spectral gap formula", || {
        let mut worst: f64 = 0.0;
        for n in 3..=n_max {
            let c = lib(build_cayley(n))?;
            ensure(c.is_connected() && c.degree() == n - 2, || format!("n={n} structure"))?;
            let rep = lib(second_eigenvalue(&c))?;
            let err = (rep.gap - rep.predicted_gap).abs();
            ensure(err < 1e-9, || format!("n={n}: residual {err:e}"))?;
            worst = worst.max(err);
        }
        Ok(format!("n <= {n_max}, worst residual {worst:.1e}"))
    });
    let trials = level.pick(200, 2000, 10_000);
    s.run(&["expansion_check"], "sampled expansion", || {
        for n in 3..=n_max.min(7) {
            let rep = lib(expansion_check(&lib(build_cayley(n))?, trials, seed ^ n as u64))?;
            ensure(rep.holds, || format!("n={n}: min ratio {}", rep.min_ratio))?;
        }
        Ok(format!("{trials} subsets per n"))
    });
    s.run(&["complete_component"], "complete orders of perturbed stars", || {
        let mut count = 0;
        for n in 5..=n_max.min(7) {
            for r in 2..n {
                if 2 * r >= n {
                    break;
                }
                for removed in 0..3 {
                    let g = lib(gen::star_perturbed(n, r, 1, removed, 0, removed as u64))?;
                    let rep = lib(complete_component(&g))?;
                    ensure(rep.incomplete_bound_holds && rep.single_center && rep.center_degree_bound_holds, || format!("{rep:?}"))?;
                    count += 1;
                }
            }
        }
        Ok(format!("{count} instances"))
    });
    s.result
}

fn incmat_suite(level: Level, seed: u64) -> SuiteResult {
    let mut s = Suite::new("incmat");
    s.run(&["inclusion_matrix", "rank_exact"], "C4 has rank 3 with a 4-set shadow", || {
        let c4 = lib(gen::cycle(4))?;
        let m = lib(inclusion_matrix(&c4, 1))?;
        let rank = lib(rank_exact(&m.dense(), seed | 1))?.rank;
        ensure(rank == 3 && m.nonzero_columns() == 4, || format!("rank {rank}"))?;
        Ok("rank 3, shadow 4".into())
    });
    let n_max = level.pick(6usize, 8, 9);
    s.run(&["gottlieb_check"], "complete graphs have full rank", || {
        let mut count = 0;
        for n in 0..=n_max {
            for r in 0..=n {
                for k in 0..=r {
                    ensure(lib(gottlieb_check(n, r, k))?.holds, || format!("n={n} r={r} s={k}"))?;
                    count += 1;
                }
            }
        }
        Ok(format!("{count} triples"))
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1c);
    let samples = level.pick(30, 300, 1000);
    let graphs: Vec<KGraph> = (0..samples)
        .map(|_| {
            let t = rng.gen_range(2..=3usize);
            let n = rng.gen_range(t + 1..=7usize);
            let total = binomial(n as u64, t as u64) as usize;
            gen::random(n, t, rng.gen_range(1..=total), rng.gen()).unwrap()
        })
        .collect();
    s.run(&["inclusion_identity_check"], "product identity", || {
        for h in &graphs {
            for u in 1..=h.r() {
                ensure(lib(inclusion_identity_check(h, u))?.holds, || format!("{:?} u={u}", h.edge_lists()))?;
            }
        }
        Ok(format!("{samples} graphs"))
    });
    s.run(&["rank_recursion_check"], "rank recursion", || {
        for h in &graphs {
            for k in 1..h.r() {
                for x in 0..h.n() {
                    let rep = lib(rank_recursion_check(h, x, k))?;
                    ensure(rep.inequality_holds && rep.block_form_holds, || format!("{:?} x={x} s={k}", h.edge_lists()))?;
                }
            }
        }
        Ok(format!("{samples} graphs"))
    });
    let triples: Vec<(usize, usize, usize)> = level.pick(vec![(5, 2, 1)], vec![(5, 2, 1), (7, 3, 1)], vec![(5, 2, 1), (7, 3, 1), (7, 3, 2)]);
    s.run(&["full_rank_robustness"], "rigidity and its tightness", || {
        let mut count = 0;
        for &(n, r, k) in &triples {
            let all = k_subsets(n, r);
            let limit = rigidity_threshold(n, r, k) as usize;
            for _ in 0..level.pick(20, 200, 1000) {
                let size = rng.gen_range(0..=limit);
                let pick = rand::seq::index::sample(&mut rng, all.len(), size);
                let f = lib(KGraph::new(n, r, pick.into_iter().map(|i| all[i])))?;
                let rep = lib(full_rank_robustness(n, r, k, &f))?;
                ensure(rep.hypothesis_met && rep.full_rank, || format!("({n},{r},{k}) {:?}", f.edge_lists()))?;
                count += 1;
            }
            let tight = lib(full_rank_robustness(n, r, k, &lib(tightness_family(n, r, bits::low_mask(k)))?))?;
            ensure(!tight.full_rank, || format!("({n},{r},{k}) tightness keeps full rank"))?;
        }
        Ok(format!("{count} removals"))
    });
    s.run(&["kk_alg_probe"], "algebraic probe records the small-size anomaly", || {
        let rep = lib(kk_alg_probe(2, 1, 1..=15, level.pick(5, 6, 6), 0, seed))?;
        ensure(rep.exhaustive && rep.rows.iter().any(|r| r.violations > 0), || "C4-type violations expected".into())?;
        Ok(format!("onset {:?}", rep.onset))
    });
    s.result
}

fn cli_suite(_level: Level, seed: u64) -> SuiteResult {
    let mut s = Suite::new("cli");
    s.run(&["parse_hypergraph"], "documents round-trip", || {
        for g in random_graphs(Level::Smoke, seed ^ 0xd0, 4) {
            let doc = HypergraphDocument::from_graph(&g, Some("sample".into()));
            let back = HypergraphDocument::parse(&doc.render()).map_err(|e| e.to_string())?;
            ensure(back == doc && back.to_graph().map_err(|e| e.to_string())? == g, || format!("{:?}", g.edge_lists()))?;
        }
        let bad = HypergraphDocument::parse(r#"{"n":4,"r":2,"edges":[[0,1,2]]}"#).unwrap_err();
        ensure(bad.message == "edge size ≠ r", || bad.to_string())?;
        let dup = HypergraphDocument::parse(r#"{"n":4,"r":2,"edges":[[0,1],[0,1]]}"#).unwrap_err();
        ensure(dup.message == "duplicate edge", || dup.to_string())?;
        Ok("round trip and error messages".into())
    });
    s.run(&["run_command"], "subcommands run deterministically", || {
        let a = run_command(["extremal", "gen", "random", "--n", "7", "--r", "3", "--m", "9", "--seed", "5"]);
        let b = run_command(["extremal", "gen", "random", "--n", "7", "--r", "3", "--m", "9", "--seed", "5"]);
        ensure(a.code == 0 && a == b, || "gen is not deterministic".into())?;
        let gap = run_command(["extremal", "cayley-gap", "--n", "5", "--json"]);
        ensure(gap.code == 0, || gap.stderr.clone())?;
        let usage = run_command(["extremal", "no-such-command"]);
        ensure(usage.code == 2, || "unknown subcommand must exit 2".into())?;
        Ok("gen, cayley-gap, usage error".into())
    });
    s.result
}

/// Runs every suite, in parallel, sorted by name.
pub fn run_suites(level: Level, seed: u64) -> Vec<SuiteResult> {
    let suites: [fn(Level, u64) -> SuiteResult; 9] = [
        cayley_suite,
        cli_suite,
        core_suite,
        cyclic_suite,
        ekr_suite,
        gbinom_suite,
        incmat_suite,
        kkbound_suite,
        kkstab_suite,
    ];
    let mut out: Vec<SuiteResult> = suites.par_iter().map(|f| f(level, seed)).collect();
    out.sort_by_key(|r| r.name);
    out
}

/// Operations in the manifest that no check exercised.
pub fn missing_coverage(results: &[SuiteResult]) -> Vec<String> {
    let mut missing = Vec::new();
    for (module, ops) in MANIFEST {
        let covered: BTreeSet<&str> = results
            .iter()
            .filter(|r| r.name == *module)
            .flat_map(|r| r.coverage.keys().copied())
            .collect();
        missing.extend(ops.iter().filter(|op| !covered.contains(*op)).map(|op| format!("{module}::{op}")));
    }
    missing
}

/// Fills `report` with the suite results and the coverage manifest.
pub fn verify(level: Level, seed: u64, report: &mut Report) {
    let results = run_suites(level, seed);
    for r in &results {
        let passed = r.checks.iter().filter(|c| c.passed).count();
        report.line(format!("{}: {passed}/{} checks", r.name, r.checks.len()));
        for c in &r.checks {
            report.check(format!("{}: {}", r.name, c.name), c.passed, c.detail.clone());
        }
    }
    let missing = missing_coverage(&results);
    report.check("coverage manifest", missing.is_empty(), missing.join(", "));
    let manifest: BTreeMap<&str, &BTreeMap<&str, Vec<String>>> = results.iter().map(|r| (r.name, &r.coverage)).collect();
    report.set_result(&json!({ "level": level, "seed": seed, "coverage": manifest, "missing": missing }));
}
