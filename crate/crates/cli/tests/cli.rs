use std::path::PathBuf;
use std::process::Command;

use extremal::{gen, KGraph};
use extremal_cli::report::Report;
use extremal_cli::{parse_hypergraph, run_command, HypergraphDocument};
use proptest::prelude::*;
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> extremal_cli::Outcome {
    run_command(std::iter::once("extremal").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let out = run(&a);
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn c4_rank_is_three() {
    let out = run(&["rank", "--s", "1", &fixture("c4.json")]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().next(), Some("3"));
    let v = json(&["rank", "--s", "1", &fixture("c4.json")]);
    assert_eq!(v["result"]["rank"]["rank"], 3);
    assert_eq!(v["result"]["shadow"], 4);
}

#[test]
fn cayley_gap_residual() {
    let out = run(&["cayley-gap", "--n", "5"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("lambda2 = "));
    let v = json(&["cayley-gap", "--n", "5"]);
    assert!(v["result"]["residual"].as_f64().unwrap() < 1e-9);
    assert!((v["result"]["spectrum"]["lambda2"].as_f64().unwrap() - (1.0 + 2f64.sqrt())).abs() < 1e-9);
}

#[test]
fn verify_suite_desk_passes_with_full_coverage() {
    let v = json(&["verify-suite", "--level", "desk"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["result"]["missing"].as_array().unwrap().len(), 0);
    let names: Vec<&str> = v["result"]["coverage"].as_object().unwrap().keys().map(|k| k.as_str()).collect();
    let mut sorted = names.clone();
    sorted.sort_unstable();
    assert_eq!(names, sorted);
    assert_eq!(names.len(), 9);
}

#[test]
fn shadow_cliques_and_checks() {
    let c4 = fixture("c4.json");
    assert_eq!(run(&["shadow", &c4]).stdout.lines().next(), Some("4"));
    assert_eq!(run(&["cliques", &c4]).stdout.lines().next(), Some("0"));
    assert_eq!(run(&["cliques", "--m", "2", &c4]).stdout.lines().next(), Some("4"));
    for cmd in ["kk-check", "ekr-cert", "cyclic-audit"] {
        let out = run(&[cmd, &c4]);
        assert_eq!(out.code, 0, "{cmd}: {}", out.stdout);
    }
    // C4 has no triangles, so stability is undefined
    let out = run(&["stability", &c4]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("no cliques"));
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["rank", "--bogus", &fixture("c4.json")]).code, 2);
    assert_eq!(run(&["rank", "/nonexistent.json"]).code, 2);
    let dir = std::env::temp_dir().join(format!("extremal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\n  \"n\": 4,\n  \"r\": 2,\n  \"edges\": [\n    [0, 1, 2]\n  ]\n}\n").unwrap();
    let out = run(&["rank", bad.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 5") && out.stderr.contains("edge size ≠ r"), "{}", out.stderr);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn failing_assertion_names_the_invariant() {
    let mut report = Report::new(vec!["demo".into()]);
    report.check("holds", true, "");
    report.check("broken invariant", false, "details");
    assert!(!report.passed);
    assert_eq!(report.failure().unwrap().name, "broken invariant");
    assert!(report.render_text().contains("FAIL broken invariant (details)"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_extremal");
    let ok = Command::new(bin).args(["rank", "--s", "1", &fixture("c4.json")]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).lines().next(), Some("3"));
    let usage = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn seeded_output_is_deterministic() {
    let args = ["gen", "random", "--n", "8", "--r", "3", "--m", "12", "--seed", "42"];
    assert_eq!(run(&args), run(&args));
    let other = run(&["gen", "random", "--n", "8", "--r", "3", "--m", "12", "--seed", "43"]);
    assert_ne!(run(&args).stdout, other.stdout);
    let probe = ["rank-probe", "--r", "3", "--s", "2", "--n", "7", "--min", "10", "--max", "14", "--samples", "5", "--seed", "7", "--json"];
    assert_eq!(run(&probe).stdout, run(&probe).stdout);
    let suite = ["verify-suite", "--level", "smoke", "--seed", "3", "--json"];
    assert_eq!(run(&suite).stdout, run(&suite).stdout);
}

#[test]
fn generated_families_match_the_library() {
    let cases: Vec<(Vec<&str>, KGraph)> = vec![
        (vec!["complete", "--n", "6", "--r", "3"], gen::complete(6, 3).unwrap()),
        (vec!["colex", "--n", "7", "--r", "3", "--m", "17"], gen::colex(7, 3, 17).unwrap()),
        (vec!["star", "--n", "7", "--r", "3", "--center", "2"], gen::star(7, 3, 2).unwrap()),
        (
            vec!["star-perturbed", "--n", "7", "--r", "3", "--removed", "2", "--foreign", "1", "--seed", "5"],
            gen::star_perturbed(7, 3, 0, 2, 1, 5).unwrap(),
        ),
        (vec!["cycle", "--n", "5"], gen::cycle(5).unwrap()),
        (vec!["random", "--n", "6", "--r", "2", "--m", "7", "--seed", "9"], gen::random(6, 2, 7, 9).unwrap()),
    ];
    for (args, want) in cases {
        let mut a = vec!["gen"];
        a.extend(args);
        let out = run(&a);
        assert_eq!(out.code, 0);
        assert_eq!(parse_hypergraph(&out.stdout).unwrap(), want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn documents_round_trip(n in 1usize..=10, r in 0usize..=4, frac in 0.0f64..=1.0, seed in any::<u64>(), named in any::<bool>()) {
        let r = r.min(n);
        let total = extremal::bits::k_subsets(n, r).len();
        let g = gen::random(n, r, (frac * total as f64) as usize, seed).unwrap();
        let doc = HypergraphDocument::from_graph(&g, named.then(|| format!("g{seed}")));
        let text = doc.render();
        let back = HypergraphDocument::parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.render(), text);
        prop_assert_eq!(back.to_graph().unwrap(), g);
    }
}
