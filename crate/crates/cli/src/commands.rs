//! Argument parsing and subcommand dispatch.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use extremal::cayley::{build_cayley, complete_component, expansion_check, second_eigenvalue};
use extremal::colex::kk_exact_shadow_bound;
use extremal::cyclic::{katona_identity_check, incomplete_count_check, max_interval_family, transposition_claim_check, CyclicOrder};
use extremal::ekr::{complement_pair, ekr_check, intersecting_iff_cliques, is_intersecting, stability_certificate};
use extremal::incmat::{algebraic_check, inclusion_matrix, kk_alg_probe, DEFAULT_PRIME_SEED};
use extremal::kkbound::{chained_clique_check, iterated_shadow_check, lovasz_check, shadow_check, vertex_audit};
use extremal::rank::rank_exact;
use extremal::stability::extract_stability;
use extremal::{gen, KGraph};
use serde_json::json;

use crate::document::{HypergraphDocument, ParseError};
use crate::report::Report;
use crate::suite::{self, Level};

#[derive(Debug, Parser)]
#[command(name = "extremal", version, about = "Exact checks for shadows, cliques, intersecting families and inclusion ranks")]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Size of the s-shadow against the Kruskal–Katona bounds.
    Shadow {
        file: PathBuf,
        /// Shadow level; defaults to r - 1.
        #[arg(long)]
        s: Option<usize>,
    },
    /// Number of complete m-vertex subgraphs.
    Cliques {
        file: PathBuf,
        /// Clique order; defaults to r + 1.
        #[arg(long)]
        m: Option<usize>,
    },
    /// Lovász clique bound, shadow bounds and the per-vertex audit.
    KkCheck { file: PathBuf },
    /// Stability extraction for a near-extremal graph.
    Stability {
        file: PathBuf,
        #[arg(long, default_value_t = 0.25)]
        epsilon: f64,
    },
    /// Intersecting-family bound, complement equivalence and stability certificate.
    EkrCert { file: PathBuf },
    /// Cyclic-order counting identity, interval maxima and transposition audit.
    CyclicAudit { file: PathBuf },
    /// Second eigenvalue and expansion of the adjacent-transposition Cayley graph.
    CayleyGap {
        #[arg(long)]
        n: usize,
        /// Random subsets for the expansion check.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Exact rank of the inclusion matrix.
    Rank {
        file: PathBuf,
        /// Column level; defaults to r - 1.
        #[arg(long)]
        s: Option<usize>,
    },
    /// Rank against C(x, s) over many graphs of each size.
    RankProbe {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        min: usize,
        /// Largest size; defaults to C(n, r).
        #[arg(long)]
        max: Option<usize>,
        /// Random graphs per size when the probe is not exhaustive.
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Runs every module's property suite.
    VerifySuite {
        #[arg(long, value_enum, default_value_t = Level::Desk)]
        level: Level,
    },
    /// Emits an instance as a hypergraph document.
    Gen {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// Edge count for colex and random.
        #[arg(long, default_value_t = 0)]
        m: u64,
        #[arg(long, default_value_t = 0)]
        center: usize,
        /// Star edges to drop for star-perturbed.
        #[arg(long, default_value_t = 0)]
        removed: usize,
        /// Edges avoiding the center to add for star-perturbed.
        #[arg(long, default_value_t = 0)]
        foreign: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Complete,
    Colex,
    Star,
    StarPerturbed,
    Cycle,
    Random,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(ParseError),
    Library(extremal::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Parse(e) => write!(f, "parse error: {e}"),
            CliError::Library(e) => write!(f, "error: {e}"),
        }
    }
}

impl From<extremal::Error> for CliError {
    fn from(e: extremal::Error) -> Self {
        CliError::Library(e)
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

/// What a run prints and how it exits.
#[derive(Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

pub fn load(path: &PathBuf) -> Result<KGraph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    Ok(HypergraphDocument::parse(&text)?.to_graph()?)
}

/// Records a secondary section, or notes why it does not apply.
fn section<T>(report: &mut Report, name: &str, res: extremal::Result<T>, f: impl FnOnce(&mut Report, T)) -> Option<serde_json::Value>
where
    T: serde::Serialize,
{
    match res {
        Ok(v) => {
            let value = serde_json::to_value(&v).expect("reports serialize");
            f(report, v);
            Some(value)
        }
        Err(e) => {
            report.line(format!("{name}: skipped ({e})"));
            None
        }
    }
}

fn shadow(g: &KGraph, s: Option<usize>, report: &mut Report) -> Result<(), CliError> {
    let s = s.unwrap_or(g.r().saturating_sub(1));
    let sh = g.s_shadow(s)?;
    report.line(format!("{}", sh.len()));
    let exact = kk_exact_shadow_bound(g.len() as u128, g.r(), s)?;
    report.check("exact Kruskal–Katona bound", sh.len() as u128 >= exact, format!("{} >= {exact}", sh.len()));
    let real = section(report, "real-x bound", iterated_shadow_check(g, s), |rep, c| {
        rep.check("C(x, s) bound", c.satisfied, format!("{} >= {:.6}", c.shadow_size, c.bound));
    });
    report.set_result(&json!({ "s": s, "size": sh.len(), "exact_bound": exact, "real_bound": real, "shadow": sh.edge_lists() }));
    Ok(())
}

fn cliques(g: &KGraph, m: Option<usize>, report: &mut Report) -> Result<(), CliError> {
    let m = m.unwrap_or(g.r() + 1);
    let count = g.count_cliques(m)?;
    report.line(format!("{count}"));
    let chain = if m > g.r() {
        section(report, "clique bound", chained_clique_check(g, g.r(), m), |rep, c| {
            rep.check("clique bound", c.satisfied, format!("{} <= {:.6}", c.count_m, c.bound));
        })
    } else {
        None
    };
    report.set_result(&json!({ "m": m, "count": count, "bound": chain }));
    Ok(())
}

fn kk_check(g: &KGraph, report: &mut Report) -> Result<(), CliError> {
    let lov = lovasz_check(g)?;
    report.line(format!("x = {:.9}", lov.x));
    report.line(format!("K^r_(r+1) = {} <= {:.6}", lov.clique_count, lov.bound));
    report.check("clique bound", lov.satisfied, if lov.equality { "equality" } else { "" });
    if let Some(k) = lov.equality_witness {
        report.line(format!("complete on {k} vertices"));
    }
    let sh = section(report, "shadow bound", shadow_check(g), |rep, c| {
        rep.check("shadow bound", c.satisfied, format!("{} >= {:.6}", c.shadow_size, c.bound));
        rep.check("shadow containment", c.containment_holds, "");
    });
    let mut iterated = Vec::new();
    for s in 0..g.r().saturating_sub(1) {
        if let Some(v) = section(report, "iterated shadow", iterated_shadow_check(g, s), |rep, c| {
            rep.check(format!("{s}-shadow bound"), c.satisfied, format!("{} >= {:.6}", c.shadow_size, c.bound));
        }) {
            iterated.push(v);
        }
    }
    let audit = section(report, "vertex audit", vertex_audit(g), |rep, a| {
        rep.check("handshake", a.handshake_holds, "");
        rep.check("per-vertex linear bound", a.linear_bound_holds, "");
        rep.check("per-vertex complement bound", a.complement_bound_holds, "");
    });
    report.set_result(&json!({ "lovasz": lov, "shadow": sh, "iterated": iterated, "audit": audit }));
    Ok(())
}

fn stability(g: &KGraph, epsilon: f64, report: &mut Report) -> Result<(), CliError> {
    let rep = extract_stability(g, epsilon)?;
    report.line(format!("x = {:.9}, delta = {:.3e}", rep.x, rep.delta));
    report.line(format!("S = {:?}", rep.s));
    report.line(format!("edges outside S: {} (bound {:.6})", rep.exceptional_edges, rep.exceptional_bound));
    let h = rep.hypotheses_met;
    report.conditional("edges outside S", h, rep.statements.edges_outside_s);
    report.conditional("few high-degree vertices", h, rep.statements.few_high_degree);
    report.conditional("low-degree edges", h, rep.statements.low_degree_edges);
    report.conditional("core", h, rep.statements.core);
    report.set_result(&rep);
    Ok(())
}

fn ekr_cert(g: &KGraph, report: &mut Report) -> Result<(), CliError> {
    let inter = is_intersecting(g);
    report.line(format!("intersecting: {inter}"));
    let (h, j) = complement_pair(g)?;
    report.line(format!("|H| = {}, |J| = {}", h.len(), j.len()));
    let bound = if inter {
        section(report, "EKR bound", ekr_check(g), |rep, e| {
            rep.line(format!("|G| = {} <= {}", e.size, e.bound));
            rep.check("EKR bound", e.within_bound, "");
            rep.check("uniqueness at equality", e.uniqueness_holds, format!("{:?}", e.common_vertex));
        })
    } else {
        None
    };
    let equiv = section(report, "complement equivalence", intersecting_iff_cliques(g), |rep, c| {
        rep.check("intersecting iff J spans cliques of H", c.equivalence_holds, "");
        rep.check("clique count of H at least |J|", c.clique_count_at_least_j, "");
    });
    let cert = if inter {
        section(report, "stability certificate", stability_certificate(g), |rep, c| {
            rep.line(format!("vertex {}: {} uncovered, delta = {:.3e}", c.v, c.uncovered, c.delta));
            rep.conditional("clique-route conclusion", c.clique_route_hypothesis, c.clique_route_conclusion);
            rep.conditional("Cayley-route conclusion", c.cayley_route_hypothesis, c.cayley_route_conclusion);
        })
    } else {
        None
    };
    report.set_result(&json!({ "intersecting": inter, "h": h.len(), "j": j.len(), "ekr": bound, "complement": equiv, "certificate": cert }));
    Ok(())
}

fn cyclic_audit(g: &KGraph, report: &mut Report) -> Result<(), CliError> {
    let id = katona_identity_check(g)?;
    report.line(format!("r!(n-r)!|G| = {}, sum over orders = {}", id.lhs, id.rhs));
    report.check("counting identity", id.holds, "");
    let max = section(report, "interval maxima", max_interval_family(&CyclicOrder::identity(g.n()), g.r()), |rep, m| {
        rep.check("interval maximum is r", m.max_size == m.r && m.characterization_holds, format!("{}", m.max_size));
    });
    let inc = section(report, "incomplete orders", incomplete_count_check(g), |rep, c| {
        rep.line(format!("incomplete orders: {} (bound {:.3})", c.incomplete, c.bound));
        rep.check("incomplete-order bound", c.holds, "");
    });
    let claim = section(report, "transposition claim", transposition_claim_check(g), |rep, c| {
        rep.check("transposition claim", c.holds, format!("{} checked, {} excluded", c.checked, c.excluded));
    });
    let comp = section(report, "complete component", complete_component(g), |rep, c| {
        rep.line(format!("complete orders: {} in {} components, largest {}", c.complete, c.components, c.largest));
        rep.conditional("center degree bound", c.single_center, c.center_degree_bound_holds);
    });
    report.set_result(&json!({ "identity": id, "intervals": max, "incomplete": inc, "claim": claim, "component": comp }));
    Ok(())
}

fn cayley_gap(n: usize, trials: usize, seed: u64, report: &mut Report) -> Result<(), CliError> {
    let c = build_cayley(n)?;
    let spectrum = second_eigenvalue(&c)?;
    let residual = (spectrum.gap - spectrum.predicted_gap).abs();
    report.line(format!("lambda2 = {:.12}", spectrum.lambda2));
    report.line(format!("gap residual = {residual:.3e}"));
    report.check("gap formula", residual < 1e-9, format!("{residual:.3e}"));
    let ex = expansion_check(&c, trials, seed)?;
    report.check("expansion", ex.holds, format!("min ratio {:.6}, bound {:.6}", ex.min_ratio, ex.bound));
    report.set_result(&json!({ "spectrum": spectrum, "residual": residual, "expansion": ex }));
    Ok(())
}

fn rank(g: &KGraph, s: Option<usize>, seed: u64, report: &mut Report) -> Result<(), CliError> {
    let s = s.unwrap_or(g.r().saturating_sub(1));
    let m = inclusion_matrix(g, s)?;
    let res = rank_exact(&m.dense(), DEFAULT_PRIME_SEED ^ seed)?;
    let cols = m.nonzero_columns();
    report.line(format!("{}", res.rank));
    report.check("rank at most rows and shadow", res.rank <= cols.min(m.row_count()), format!("{} rows, {cols} columns", m.row_count()));
    let alg = section(report, "algebraic bound", algebraic_check(g, s), |rep, a| {
        rep.line(format!("C(x, s) = {:.6} (rank bound {})", a.bound, if a.satisfied { "met" } else { "missed" }));
    });
    report.set_result(&json!({ "s": s, "rank": res, "rows": m.row_count(), "shadow": cols, "algebraic": alg }));
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn rank_probe(r: usize, s: usize, n: usize, min: usize, max: Option<usize>, samples: usize, seed: u64, report: &mut Report) -> Result<(), CliError> {
    let all = extremal::gbinom::binomial(n as u64, r as u64) as usize;
    let rep = kk_alg_probe(r, s, min..=max.unwrap_or(all), n, samples, seed)?;
    report.line(format!("{} r={r} s={s} n={n}", if rep.exhaustive { "exhaustive" } else { "sampled" }));
    report.line("size instances violations equalities worst_deficit");
    for row in &rep.rows {
        report.line(format!("{} {} {} {} {:.6}", row.size, row.instances, row.violations, row.equalities, row.worst_deficit));
    }
    report.line(match rep.onset {
        Some(k) => format!("no violations from size {k}"),
        None => "violations up to the largest size".into(),
    });
    report.set_result(&rep);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn generate(family: Family, n: usize, r: usize, m: u64, center: usize, removed: usize, foreign: usize, seed: u64) -> Result<String, CliError> {
    let (g, name) = match family {
        Family::Complete => (gen::complete(n, r)?, format!("complete n={n} r={r}")),
        Family::Colex => (gen::colex(n, r, m)?, format!("colex n={n} r={r} m={m}")),
        Family::Star => (gen::star(n, r, center)?, format!("star n={n} r={r} center={center}")),
        Family::StarPerturbed => (
            gen::star_perturbed(n, r, center, removed, foreign, seed)?,
            format!("star-perturbed n={n} r={r} center={center} removed={removed} foreign={foreign} seed={seed}"),
        ),
        Family::Cycle => (gen::cycle(n)?, format!("cycle n={n}")),
        Family::Random => (gen::random(n, r, m as usize, seed)?, format!("random n={n} r={r} m={m} seed={seed}")),
    };
    Ok(HypergraphDocument::from_graph(&g, Some(name)).render())
}

/// Runs a parsed command line.
pub fn execute(cli: Cli, argv: Vec<String>) -> Result<Outcome, CliError> {
    let mut report = Report::new(argv);
    let seed = cli.seed;
    match cli.command {
        Command::Gen { family, n, r, m, center, removed, foreign } => {
            let text = generate(family, n, r, m, center, removed, foreign, seed)?;
            return Ok(Outcome { stdout: text, stderr: String::new(), code: 0 });
        }
        Command::Shadow { file, s } => shadow(&load(&file)?, s, &mut report)?,
        Command::Cliques { file, m } => cliques(&load(&file)?, m, &mut report)?,
        Command::KkCheck { file } => kk_check(&load(&file)?, &mut report)?,
        Command::Stability { file, epsilon } => stability(&load(&file)?, epsilon, &mut report)?,
        Command::EkrCert { file } => ekr_cert(&load(&file)?, &mut report)?,
        Command::CyclicAudit { file } => cyclic_audit(&load(&file)?, &mut report)?,
        Command::CayleyGap { n, trials } => cayley_gap(n, trials, seed, &mut report)?,
        Command::Rank { file, s } => rank(&load(&file)?, s, seed, &mut report)?,
        Command::RankProbe { r, s, n, min, max, samples } => rank_probe(r, s, n, min, max, samples, seed, &mut report)?,
        Command::VerifySuite { level } => suite::verify(level, seed, &mut report),
    }
    let stdout = if cli.json { report.render_json() } else { report.render_text() };
    let (stderr, code) = match report.failure() {
        Some(c) => (format!("assertion failed: {}\n", c.name), 1),
        None => (String::new(), 0),
    };
    Ok(Outcome { stdout, stderr, code })
}

/// Parses `argv` (program name first) and runs it. Usage and parse errors exit with 2.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    match execute(cli, echo) {
        Ok(out) => out,
        Err(e) => Outcome { stdout: String::new(), stderr: format!("{e}\n"), code: 2 },
    }
}
