use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::json;

use super::experiment::{write_text, CurveCache, ExperimentConfig, LoadedGraph, WeightModel};
use super::{Cli, Command, GenArgs, GenKind, GraphArgs, ReportArgs};
use crate::cascade::{estimate_spread, exact_spread, simulate_runs, CascadeConfig, SeedMultiset};
use crate::error::{Error, Result};
use crate::graph::{
    gen_clique, gen_random, gen_star, write_id_map_csv, write_weighted_edge_list, IdMap,
};
use crate::maximize::{default_pool, single_node_spreads, GreedyCurve, Mode, NodeSpreadRanking};
use crate::metrics::{
    alpha_sweep_with, categorize, default_alpha_grid, fit_saturation, hub_ratio,
    influence_saturation, reselection_gain, MetricsReport, SweepPoint,
};
use crate::seeding::derive_seed;

pub(super) fn dispatch(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Gen(args) => gen(cli, args),
        Command::Weights(args) => weights(cli, &args.input, args.model, args.nodes),
        Command::Maximize(args) => {
            let cfg = match &args.config {
                Some(path) => ExperimentConfig::load(path)?,
                None => experiment(cli, &args.graph, Some(args.mode), args.alpha, args.k)?,
            };
            maximize(&cfg)
        }
        Command::Spread(args) => {
            let loaded = load(cli, &args.graph)?;
            let seeds: SeedMultiset = args.seeds.parse()?;
            let cfg = CascadeConfig::new(args.alpha, cli.runs, derive_seed(cli.seed, "mc"))?;
            let est = estimate_spread(&loaded.graph, &seeds, &cfg)?;
            if args.dump_runs {
                let mut csv = String::from("run,activated\n");
                for (i, c) in simulate_runs(&loaded.graph, &seeds, &cfg)?
                    .iter()
                    .enumerate()
                {
                    let _ = writeln!(csv, "{i},{c}");
                }
                write_text(&cli.out_dir.join("runs.csv"), &csv)?;
            }
            println!(
                "{}",
                json!({ "seeds": seeds.to_string(), "alpha": args.alpha, "mean": est.mean, "std_error": est.std_error, "runs": est.runs })
            );
            Ok(())
        }
        Command::Exact(args) => {
            let loaded = load(cli, &args.graph)?;
            let seeds: SeedMultiset = args.seeds.parse()?;
            let e = exact_spread(&loaded.graph, &seeds, args.alpha)?;
            println!(
                "{}",
                json!({ "seeds": seeds.to_string(), "alpha": args.alpha, "spread": e.spread, "host_spread": e.host_spread, "set_size": e.set_size, "unique": e.unique })
            );
            Ok(())
        }
        Command::Report(args) => {
            let cfg = match &args.config {
                Some(path) => ExperimentConfig::load(path)?,
                None => experiment(cli, &args.graph, None, args.alpha, args.k)?,
            };
            report(&cfg, args)
        }
        Command::SweepAlpha(args) => {
            let cfg = experiment(cli, &args.graph, None, 1.0, args.k)?;
            let alphas = args.alphas.clone().unwrap_or_else(default_alpha_grid);
            let loaded = cfg.load_graph()?;
            let cache = CurveCache::new(&loaded.graph, loaded.model, &cfg.out_dir);
            let points = sweep(&cache, &cfg, &alphas)?;
            write_text(&cfg.out_dir.join("alpha_sweep.csv"), &sweep_csv(&points))?;
            write_text(&cfg.out_dir.join("manifest.json"), &cfg.to_json())?;
            print!("{}", sweep_csv(&points));
            Ok(())
        }
        Command::RankNodes(args) => {
            let loaded = load(cli, &args.graph)?;
            let cfg = CascadeConfig::new(1.0, cli.runs, derive_seed(cli.seed, "rank"))?;
            let ranking = single_node_spreads(&loaded.graph, &cfg, args.pool.as_deref())?;
            write_text(&cli.out_dir.join("ranking.csv"), &ranking.to_csv())?;
            print!("{}", ranking.to_csv());
            Ok(())
        }
    }
}

fn require_input(graph: &GraphArgs) -> Result<PathBuf> {
    graph
        .input
        .clone()
        .ok_or_else(|| Error::invalid("--input is required"))
}

fn experiment(
    cli: &Cli,
    graph: &GraphArgs,
    mode: Option<Mode>,
    alpha: f64,
    k: usize,
) -> Result<ExperimentConfig> {
    let cfg = ExperimentConfig {
        input: require_input(graph)?,
        weights: graph.weights,
        undirected: cli.undirected,
        nodes: graph.nodes,
        mode,
        alpha,
        k,
        runs: cli.runs,
        seed: cli.seed,
        out_dir: cli.out_dir.clone(),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn load(cli: &Cli, graph: &GraphArgs) -> Result<LoadedGraph> {
    super::load_graph(
        &require_input(graph)?,
        graph.weights,
        cli.undirected,
        graph.nodes,
        cli.seed,
    )
}

fn write_ids(dir: &Path, ids: &IdMap) -> Result<()> {
    if ids.is_identity() {
        Ok(())
    } else {
        write_text(&dir.join("ids.csv"), &write_id_map_csv(ids))
    }
}

fn gen(cli: &Cli, args: &GenArgs) -> Result<()> {
    let (name, graph, params) = match args.kind {
        GenKind::Star { leaves, p } => (
            "star",
            gen_star(leaves, p)?,
            json!({ "leaves": leaves, "p": p }),
        ),
        GenKind::Clique { n, p } => ("clique", gen_clique(n, p)?, json!({ "n": n, "p": p })),
        GenKind::Random { n, edge_prob, p } => {
            let seed = derive_seed(cli.seed, "gen");
            (
                "random",
                gen_random(n, edge_prob, p, seed)?,
                json!({ "n": n, "edge_prob": edge_prob, "p": p }),
            )
        }
    };
    let output = args
        .output
        .clone()
        .unwrap_or_else(|| cli.out_dir.join(format!("{name}.txt")));
    write_text(&output, &write_weighted_edge_list(&graph))?;
    let manifest = json!({
        "kind": name,
        "params": params,
        "seed": cli.seed,
        "node_count": graph.node_count(),
        "edge_count": graph.edge_count(),
    });
    write_text(
        &output.with_extension("manifest.json"),
        &(serde_json::to_string_pretty(&manifest).expect("json") + "\n"),
    )?;
    println!(
        "{}: {} nodes, {} edges",
        output.display(),
        graph.node_count(),
        graph.edge_count()
    );
    Ok(())
}

fn weights(cli: &Cli, input: &Path, model: WeightModel, nodes: Option<usize>) -> Result<()> {
    if !matches!(model, WeightModel::Wc | WeightModel::Tr) {
        return Err(Error::invalid("weights --model must be wc or tr"));
    }
    let loaded = super::load_graph(input, model, cli.undirected, nodes, cli.seed)?;
    write_text(
        &cli.out_dir.join("weighted.txt"),
        &write_weighted_edge_list(&loaded.graph),
    )?;
    write_text(&cli.out_dir.join("ids.csv"), &write_id_map_csv(&loaded.ids))?;
    println!(
        "{}: {} nodes, {} edges, model {}",
        cli.out_dir.join("weighted.txt").display(),
        loaded.graph.node_count(),
        loaded.graph.edge_count(),
        model.as_str()
    );
    Ok(())
}

fn curve_summary(curve: &GreedyCurve, loaded: &LoadedGraph, digest: &str) -> serde_json::Value {
    let last = curve.steps.last().expect("budget >= 1");
    let seeds = curve.seeds();
    json!({
        "mode": curve.mode,
        "alpha": curve.alpha,
        "k": curve.len(),
        "weight_model": loaded.model.as_str(),
        "node_count": loaded.graph.node_count(),
        "edge_count": loaded.graph.edge_count(),
        "spread_mean": last.spread.mean,
        "spread_se": last.spread.std_error,
        "spread_mean_normalized": last.spread.mean / loaded.graph.node_count() as f64,
        "seeds": seeds.to_string(),
        "unique_seeds": seeds.unique_count(),
        "graph_digest": digest,
    })
}

fn maximize(cfg: &ExperimentConfig) -> Result<()> {
    cfg.validate()?;
    let mode = cfg.mode.unwrap_or(Mode::Multiset);
    let loaded = cfg.load_graph()?;
    let cache = CurveCache::new(&loaded.graph, loaded.model, &cfg.out_dir);
    let curve = cache.curve(cfg.k, mode, &cfg.cascade()?)?;
    let dir = &cfg.out_dir;
    write_text(&dir.join(format!("curve_{mode}.csv")), &curve.to_csv())?;
    let summary = curve_summary(&curve, &loaded, &cache.graph_digest);
    let summary = serde_json::to_string_pretty(&summary).expect("json") + "\n";
    write_text(&dir.join(format!("summary_{mode}.json")), &summary)?;
    write_text(&dir.join("manifest.json"), &cfg.to_json())?;
    write_ids(dir, &loaded.ids)?;
    print!("{summary}");
    Ok(())
}

fn sweep(cache: &CurveCache, cfg: &ExperimentConfig, alphas: &[f64]) -> Result<Vec<SweepPoint>> {
    let mc = cfg.cascade()?;
    let simple = cache.curve(cfg.k, Mode::Set, &mc)?;
    alpha_sweep_with(&simple, cfg.k, alphas, |alpha| {
        cache.curve(cfg.k, Mode::Multiset, &mc.with_alpha(alpha))
    })
}

fn sweep_csv(points: &[SweepPoint]) -> String {
    let mut out = String::from("alpha,rg,multiset_spread,set_spread\n");
    for p in points {
        let _ = writeln!(
            out,
            "{:?},{},{},{}",
            p.alpha, p.rg, p.multiset_spread, p.set_spread
        );
    }
    out
}

fn report(cfg: &ExperimentConfig, args: &ReportArgs) -> Result<()> {
    cfg.validate()?;
    let all = !(args.rg || args.saturation || args.hr || args.sweep_alpha);
    let (want_rg, want_is, want_hr) = (all || args.rg, all || args.saturation, all || args.hr);
    let loaded = cfg.load_graph()?;
    let cache = CurveCache::new(&loaded.graph, loaded.model, &cfg.out_dir);
    let mc = cfg.cascade()?;
    let dir = &cfg.out_dir;

    let name = args.name.clone().unwrap_or_else(|| {
        cfg.input
            .file_stem()
            .map_or_else(|| "graph".into(), |s| s.to_string_lossy().into_owned())
    });
    let mut report = MetricsReport {
        graph: name,
        weight_model: loaded.model.as_str().into(),
        k: cfg.k,
        alpha: cfg.alpha,
        ..Default::default()
    };

    let simple = cache.curve(cfg.k, Mode::Set, &mc)?;
    write_text(&dir.join("curve_set.csv"), &simple.to_csv())?;
    let mut greedy_nodes = simple.sequence();

    if want_rg {
        let resel = cache.curve(cfg.k, Mode::Multiset, &mc)?;
        write_text(&dir.join("curve_multiset.csv"), &resel.to_csv())?;
        let rg = reselection_gain(&simple, &resel, cfg.k)?;
        report.rg = Some(rg);
        report.category = Some(categorize(rg));
        greedy_nodes.extend(resel.sequence());
    }

    if want_is {
        if cfg.k >= args.k_max {
            let fit = fit_saturation(&simple, args.k_min, args.k_max)?;
            report.is_value = influence_saturation(&fit);
            report.fit = Some(fit);
        } else {
            log::warn!(
                "k = {} below fit window end {}; saturation not reported",
                cfg.k,
                args.k_max
            );
        }
    }

    if want_hr {
        let rank_cfg = CascadeConfig::new(1.0, cfg.runs, derive_seed(cfg.seed, "rank"))?;
        let pool = default_pool(&loaded.graph, &greedy_nodes);
        let ranking: NodeSpreadRanking =
            single_node_spreads(&loaded.graph, &rank_cfg, Some(&pool))?;
        for k in 2..=args.hr_max.min(ranking.len()) {
            report.hr.push((k, hub_ratio(&ranking, k)?));
        }
        write_text(&dir.join("ranking.csv"), &ranking.to_csv())?;
    }

    if args.sweep_alpha {
        report.alpha_curve = sweep(&cache, cfg, &default_alpha_grid())?;
        write_text(
            &dir.join("alpha_sweep.csv"),
            &sweep_csv(&report.alpha_curve),
        )?;
    }

    let text = serde_json::to_string_pretty(&report.to_json()).expect("json") + "\n";
    write_text(&dir.join("report.json"), &text)?;
    write_text(
        &dir.join("report.csv"),
        &format!("{}\n{}\n", MetricsReport::CSV_HEADER, report.to_csv_row()),
    )?;
    write_text(&dir.join("manifest.json"), &cfg.to_json())?;
    write_ids(dir, &loaded.ids)?;
    print!("{text}");
    Ok(())
}
