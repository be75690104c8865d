//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits nonzero if any fails.
//!
//! A positional argument restricts the run to criteria whose label contains
//! it. Criterion 11 needs the SNAP files `CA-GrQc.txt` and `Wiki-Vote.txt`
//! in the directory named by `RESELECT_SNAP_DIR`; without it the criterion
//! is reported as skipped.

mod common;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use rand::Rng;
use reselect::cascade::{estimate_spread, exact_spread, CascadeConfig, SeedMultiset};
use reselect::cli::{load_graph, WeightModel};
use reselect::graph::{copy_expand, gen_clique, gen_star, WeightedGraph};
use reselect::maximize::{greedy_select, single_node_spreads, GreedyCurve, GreedyStep, Mode};
use reselect::metrics::{
    categorize, fit_saturation, fit_saturation_values, hub_ratio, influence_saturation, pearson,
    reselection_gain, Category,
};
use reselect::seeding::derive_seed;

use common::Edge;

enum Verdict {
    Pass(String),
    Fail(String),
    Skip(String),
}

type Check = fn() -> Verdict;

fn verdict(ok: bool, detail: String) -> Verdict {
    if ok {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

const MC_SEED: u64 = 42;

fn cfg(alpha: f64, runs: u64, seed: u64) -> CascadeConfig {
    CascadeConfig::new(alpha, runs, derive_seed(seed, "mc")).unwrap()
}

fn weighted(n: usize, edges: &[Edge]) -> WeightedGraph {
    WeightedGraph::from_edges(n, edges.to_vec()).unwrap()
}

fn multiset(pairs: &[(usize, u32)]) -> SeedMultiset {
    SeedMultiset::from_pairs(pairs.iter().copied()).unwrap()
}

/// Small instance whose direct enumeration and copy graph both stay under
/// the oracle's coin budget.
fn oracle_instance(
    rng: &mut rand_chacha::ChaCha8Rng,
    max_mult: u32,
) -> (usize, Vec<Edge>, Vec<(usize, u32)>, f64) {
    loop {
        let n = rng.gen_range(3..=7);
        let e = rng.gen_range(2..=10);
        let edges = common::random_graph(rng, n, e);
        let seeds = common::random_multiset(rng, n, 3, max_mult);
        let alpha = common::random_alpha(rng);
        if common::coin_count(&edges, &seeds, alpha) <= 16 {
            return (n, edges, seeds, alpha);
        }
    }
}

fn alpha_zero_reduction() -> Verdict {
    let mut identical = 0;
    let mut first_diff = None;
    for i in 0..20u64 {
        let mut rng = common::rng(1000 + i);
        let n = rng.gen_range(10..=30);
        let edges = common::random_graph(&mut rng, n, 3 * n);
        let g = weighted(n, &edges);
        let k = 10;
        let set = greedy_select(&g, k, Mode::Set, &cfg(0.0, 2_000, i)).unwrap();
        let multi = greedy_select(&g, k, Mode::Multiset, &cfg(0.0, 2_000, i)).unwrap();
        if set.sequence() == multi.sequence() {
            identical += 1;
        } else if first_diff.is_none() {
            first_diff = Some(format!(
                "; graph {i}: {:?} vs {:?}",
                set.sequence(),
                multi.sequence()
            ));
        }
    }
    verdict(
        identical == 20,
        format!(
            "{identical}/20 sequences identical{}",
            first_diff.unwrap_or_default()
        ),
    )
}

fn copy_graph_equivalence() -> Verdict {
    let mut rng = common::rng(2);
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    let mut done = 0;
    while done < 200 {
        let (n, edges, seeds, alpha) = oracle_instance(&mut rng, 3);
        let g = weighted(n, &edges);
        let needed: BTreeMap<usize, usize> = seeds
            .iter()
            .filter(|s| s.1 > 1)
            .map(|&(v, m)| (v, m as usize - 1))
            .collect();
        let cg = copy_expand(&g, alpha, &needed).unwrap();
        let host_edges: Vec<Edge> = cg.host().edges().collect();
        let mut host_seeds: Vec<usize> = seeds.iter().map(|s| s.0).collect();
        for ids in cg.copy_map().values() {
            host_seeds.extend_from_slice(ids);
        }
        if common::coin_count(&host_edges, &[], 1.0) > common::MAX_COINS {
            continue;
        }
        done += 1;
        let direct = common::multiset_spread(n, &edges, &seeds, alpha);
        let size: u32 = seeds.iter().map(|s| s.1).sum();
        let eq = common::set_spread(cg.host().node_count(), &host_edges, &host_seeds) - size as f64
            + seeds.len() as f64;
        let lib = exact_spread(&g, &multiset(&seeds), alpha).unwrap().spread;
        let err = (direct - eq).abs().max((direct - lib).abs());
        worst = worst.max(err);
        if err > 1e-9 {
            failures += 1;
        }
    }
    verdict(
        failures == 0,
        format!("200 instances, {failures} mismatches, max |diff| {worst:.2e}"),
    )
}

fn diminishing_returns() -> Verdict {
    let mut rng = common::rng(3);
    // violations by where the added node sits: in x, outside y, in y only
    let mut by_case = [0usize; 3];
    let mut seen = [0usize; 3];
    let mut done = 0;
    while done < 500 {
        let (n, edges, y, alpha) = oracle_instance(&mut rng, 3);
        let x: Vec<(usize, u32)> = y
            .iter()
            .map(|&(v, m)| (v, rng.gen_range(0..=m)))
            .filter(|s| s.1 > 0)
            .collect();
        let z = rng.gen_range(0..n);
        let plus = |s: &[(usize, u32)]| {
            let mut m: BTreeMap<usize, u32> = s.iter().copied().collect();
            *m.entry(z).or_insert(0) += 1;
            m.into_iter().collect::<Vec<_>>()
        };
        let (xz, yz) = (plus(&x), plus(&y));
        if common::coin_count(&edges, &yz, alpha) > 18 {
            continue;
        }
        done += 1;
        let f = |s: &[(usize, u32)]| common::multiset_spread(n, &edges, s, alpha);
        let gain_x = f(&xz) - f(&x);
        let gain_y = f(&yz) - f(&y);
        let g = weighted(n, &edges);
        let e = |s: &[(usize, u32)]| exact_spread(&g, &multiset(s), alpha).unwrap().spread;
        let lib_x = e(&xz) - e(&x);
        let lib_y = e(&yz) - e(&y);
        let case = if x.iter().any(|s| s.0 == z) {
            0
        } else if !y.iter().any(|s| s.0 == z) {
            1
        } else {
            2
        };
        seen[case] += 1;
        if gain_x < gain_y - 1e-9 || lib_x < lib_y - 1e-9 {
            by_case[case] += 1;
        }
    }
    let violations: usize = by_case.iter().sum();
    // smallest instance of the failing case: 1 -> 0 (p = 1), 0 -> 2 (p = 0.5)
    let tiny = [(1, 0, 1.0), (0, 2, 0.5)];
    let f = |s: &[(usize, u32)]| common::multiset_spread(3, &tiny, s, 1.0);
    let tiny_x = f(&[(0, 1), (1, 1)]) - f(&[(1, 1)]);
    let tiny_y = f(&[(0, 2), (1, 1)]) - f(&[(0, 1), (1, 1)]);
    verdict(
        violations == 0,
        format!(
            "500 instances, {violations} violations (node already in x: {}/{}, node outside y: {}/{}, \
             node in y but not x: {}/{}); e.g. x = {{1}}, y = {{0, 1}}, add 0 on 1->0 (1.0), 0->2 (0.5): \
             gain {tiny_x:.2} at x < {tiny_y:.2} at y",
            by_case[0], seen[0], by_case[1], seen[1], by_case[2], seen[2]
        ),
    )
}

fn star_values() -> Verdict {
    let g = gen_star(10, 0.5).unwrap();
    let cases = [(1u32, 1.0, 6.0), (2, 1.0, 8.5), (2, 0.5, 7.25)];
    let mut ok = true;
    let mut parts = Vec::new();
    for (m, alpha, expect) in cases {
        let e = estimate_spread(&g, &multiset(&[(0, m)]), &cfg(alpha, 10_000, MC_SEED)).unwrap();
        ok &= (e.mean - expect).abs() <= 0.05;
        parts.push(format!("{expect}: {:.4}", e.mean));
    }
    verdict(ok, parts.join(", "))
}

fn star_rg() -> Verdict {
    let g = gen_star(10, 0.5).unwrap();
    let c = cfg(1.0, 10_000, MC_SEED);
    let set = greedy_select(&g, 2, Mode::Set, &c).unwrap();
    let multi = greedy_select(&g, 2, Mode::Multiset, &c).unwrap();
    let rg = reselection_gain(&set, &multi, 2).unwrap();
    verdict((1.26..=1.36).contains(&rg), format!("RG = {rg:.4}"))
}

fn mc_vs_oracle() -> Verdict {
    let mut rng = common::rng(6);
    let mut within = 0;
    for i in 0..50u64 {
        let (n, edges, seeds, alpha) = oracle_instance(&mut rng, 3);
        let exact = common::multiset_spread(n, &edges, &seeds, alpha);
        let e = estimate_spread(
            &weighted(n, &edges),
            &multiset(&seeds),
            &cfg(alpha, 10_000, i),
        )
        .unwrap();
        if (e.mean - exact).abs() <= 4.0 * e.std_error + 1e-12 {
            within += 1;
        }
    }
    verdict(within >= 48, format!("{within}/50 within 4 SE"))
}

fn curve_of(values: &[f64]) -> GreedyCurve {
    GreedyCurve {
        mode: Mode::Set,
        alpha: 1.0,
        node_count: values.len(),
        steps: values
            .iter()
            .enumerate()
            .map(|(i, &v)| GreedyStep {
                k: i + 1,
                node: i,
                multiplicity_after: 1,
                spread: reselect::cascade::SpreadEstimate::exact(v),
                raw_mean: v,
            })
            .collect(),
    }
}

fn saturation_algebra() -> Verdict {
    let mut worst: f64 = 0.0;
    for (s1, s0) in [
        (2.0, 10.0),
        (0.37, 41.5),
        (12.25, -3.0),
        (0.05, 3.1),
        (5.0, 0.0),
    ] {
        let values: Vec<f64> = (1..=60).map(|k| s0 + s1 * k as f64).collect();
        for fit in [
            fit_saturation_values(&values, 5, 50).unwrap(),
            fit_saturation(&curve_of(&values), 5, 50).unwrap(),
        ] {
            let is = influence_saturation(&fit).unwrap();
            worst = worst
                .max((fit.sigma1 - s1).abs())
                .max((fit.sigma0 - s0).abs())
                .max((is - (s1 + s0) / s1).abs());
        }
    }
    let flat = fit_saturation_values(&[7.0; 50], 5, 50).unwrap();
    let undefined = influence_saturation(&flat).is_none();
    verdict(
        worst <= 1e-9 && undefined,
        format!("max error {worst:.2e}, flat curve undefined: {undefined}"),
    )
}

fn hub_ratios() -> Verdict {
    let star = single_node_spreads(
        &gen_star(10, 0.5).unwrap(),
        &cfg(1.0, 10_000, MC_SEED),
        None,
    )
    .unwrap();
    let star_hr: Vec<f64> = (2..=11).map(|k| hub_ratio(&star, k).unwrap()).collect();
    let clique = single_node_spreads(
        &gen_clique(10, 0.1).unwrap(),
        &cfg(1.0, 10_000, MC_SEED),
        None,
    )
    .unwrap();
    let clique_hr: Vec<f64> = (2..=10).map(|k| hub_ratio(&clique, k).unwrap()).collect();
    let ok = star_hr.iter().all(|h| (h - 6.0).abs() <= 0.2)
        && clique_hr.iter().all(|h| (h - 1.0).abs() <= 0.05);
    let range = |v: &[f64]| {
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        format!("[{lo:.4}, {hi:.4}]")
    };
    verdict(
        ok,
        format!(
            "star HR {}, clique HR {}",
            range(&star_hr),
            range(&clique_hr)
        ),
    )
}

fn categories() -> Verdict {
    let got = [categorize(1.94), categorize(1.21), categorize(1.02)];
    verdict(
        got == [Category::Friendly, Category::Aware, Category::Free],
        format!("1.94 {}, 1.21 {}, 1.02 {}", got[0], got[1], got[2]),
    )
}

/// Printed (IS, RG) pairs for the twelve benchmark networks.
const TABLE: [(f64, f64); 12] = [
    (64.29, 1.94),
    (7.76, 1.02),
    (18.47, 1.70),
    (7.83, 1.05),
    (13.40, 1.07),
    (17.18, 1.21),
    (12.55, 1.22),
    (15.90, 1.0),
    (25.12, 1.06),
    (28.02, 1.24),
    (33.50, 1.67),
    (3.85, 1.04),
];

fn table_correlation() -> Verdict {
    let is: Vec<f64> = TABLE.iter().map(|t| t.0).collect();
    let rg: Vec<f64> = TABLE.iter().map(|t| t.1).collect();
    let r = pearson(&is, &rg).unwrap();
    verdict((r - 0.78).abs() <= 0.03, format!("r = {r:.4}"))
}

fn snap_networks() -> Verdict {
    let Some(dir) = std::env::var_os("RESELECT_SNAP_DIR").map(PathBuf::from) else {
        return Verdict::Skip("RESELECT_SNAP_DIR not set; optional hours-scale run".into());
    };
    let mut ok = true;
    let mut parts = Vec::new();
    for (file, want) in [
        ("CA-GrQc.txt", Category::Free),
        ("Wiki-Vote.txt", Category::Friendly),
    ] {
        let path = dir.join(file);
        if !path.exists() {
            return Verdict::Skip(format!("{} missing", path.display()));
        }
        let loaded = load_graph(&path, WeightModel::Wc, false, None, MC_SEED).unwrap();
        let c = cfg(1.0, 10_000, MC_SEED);
        let set = greedy_select(&loaded.graph, 50, Mode::Set, &c).unwrap();
        let multi = greedy_select(&loaded.graph, 50, Mode::Multiset, &c).unwrap();
        let rg = reselection_gain(&set, &multi, 50).unwrap();
        let got = categorize(rg);
        ok &= got == want;
        parts.push(format!("{file} RG {rg:.3} {got}"));
    }
    verdict(ok, parts.join(", "))
}

fn snapshot(dir: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in fs::read_dir(&d).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                out.insert(
                    path.strip_prefix(dir).unwrap().to_path_buf(),
                    fs::read(&path).unwrap(),
                );
            }
        }
    }
    out
}

fn run_cli(args: &[&str]) {
    let out = Command::new(env!("CARGO_BIN_EXE_reselect"))
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

fn determinism() -> Verdict {
    let tmp = tempfile::tempdir().unwrap();
    let graph = tmp.path().join("random.txt");
    let graph = graph.to_str().unwrap();
    run_cli(&[
        "gen",
        "--seed",
        "7",
        "--output",
        graph,
        "random",
        "--n",
        "30",
        "--edge-prob",
        "0.1",
        "--p",
        "0.2",
    ]);
    let out = tmp.path().join("out");
    let out_s = out.to_str().unwrap();
    let mut snaps = Vec::new();
    for threads in ["1", "4", "1"] {
        let _ = fs::remove_dir_all(&out);
        let common = [
            "--runs",
            "2000",
            "--threads",
            threads,
            "--out-dir",
            out_s,
            "--input",
            graph,
        ];
        for sub in [
            &["maximize", "--k", "5"][..],
            &["maximize", "--k", "5", "--mode", "set"],
            &["report", "--k", "5", "--sweep-alpha"],
        ] {
            let args: Vec<&str> = sub.iter().chain(common.iter()).copied().collect();
            run_cli(&args);
        }
        snaps.push(snapshot(&out));
    }
    let files = snaps[0].len();
    verdict(
        files > 0 && snaps[0] == snaps[1] && snaps[1] == snaps[2],
        format!(
            "{files} output files, threads 1/4/1 byte-identical: {}",
            snaps[0] == snaps[1] && snaps[1] == snaps[2]
        ),
    )
}

fn main() {
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let criteria: [(&str, Check); 12] = [
        ("alpha-zero reduction", alpha_zero_reduction),
        ("copy-graph equivalence", copy_graph_equivalence),
        ("diminishing returns", diminishing_returns),
        ("star spread values", star_values),
        ("star reselection gain", star_rg),
        ("monte carlo vs oracle", mc_vs_oracle),
        ("saturation algebra", saturation_algebra),
        ("hub ratio fixtures", hub_ratios),
        ("categorization", categories),
        ("benchmark correlation", table_correlation),
        ("snap networks", snap_networks),
        ("determinism across threads", determinism),
    ];
    let mut failed = 0;
    let mut ran = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let label = format!("criterion {:>2} {name}", i + 1);
        if filter.as_ref().is_some_and(|f| !label.contains(f.as_str())) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let v = check();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match v {
            Verdict::Pass(d) => ("PASS", d),
            Verdict::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Verdict::Skip(d) => ("SKIP", d),
        };
        println!("{tag} {label}: {detail} ({secs:.1}s)");
    }
    println!("acceptance: {ran} run, {failed} failed");
    if failed > 0 {
        std::process::exit(1);
    }
}
