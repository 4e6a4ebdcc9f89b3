use std::fs;
use std::io::{Cursor, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use chiralqw::distance::{swarm_distance_distribution, write_distance_csv, DistanceReport};
use chiralqw::evaluation::{
    compare_versions, make_folds, run_crossval, score_tables, sweep_swarm_size_paired, sweep_time, Aggregate,
    EvaluationReport, FoldPlan, MethodSpec, Provenance,
};
use chiralqw::graph::{canonicalize, compute_stats, normalize_stats, parse_edge_list, Graph, GraphStats};
use chiralqw::scoring::{write_scores, write_top_k, Precision};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::config::{resolve, CommandKind, Flags, ParseEcho, RunConfig};
use crate::output::{num, RunDir};

pub const NO_LINKS: &str = "no links found";

/// What a finished run leaves behind.
#[derive(Debug)]
pub struct Finished {
    pub dir: PathBuf,
    /// Human-readable summary for the terminal.
    pub lines: Vec<String>,
}

#[derive(Serialize)]
struct InputEcho {
    path: PathBuf,
    sha256: String,
    raw_nodes: usize,
    raw_edges: usize,
    nodes: usize,
    edges: usize,
}

#[derive(Serialize)]
struct Report<'a> {
    command: &'static str,
    version: &'static str,
    config: &'a RunConfig,
    inputs: Vec<InputEcho>,
    results: Value,
}

#[derive(Serialize)]
struct Timing {
    wall_seconds: f64,
    threads: usize,
}

struct Loaded {
    graph: Graph,
    echo: InputEcho,
}

/// Reads, parses and canonicalizes one edge list.
fn load(path: &Path, parse: &ParseEcho, canonical: bool) -> Result<Loaded> {
    let bytes = fs::read(path).with_context(|| format!("cannot read input {}", path.display()))?;
    let raw = parse_edge_list(Cursor::new(&bytes), &parse.options())
        .with_context(|| format!("cannot parse input {}", path.display()))?;
    let graph = if canonical { canonicalize(&raw) } else { raw.clone() };
    let echo = InputEcho {
        path: path.to_path_buf(),
        sha256: Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect(),
        raw_nodes: raw.node_count(),
        raw_edges: raw.edge_count(),
        nodes: graph.node_count(),
        edges: graph.edge_count(),
    };
    Ok(Loaded { graph, echo })
}

/// Resolves the configuration, runs `command` inside a pool of the configured
/// width and commits the run directory.
pub fn run(command: CommandKind, flags: Flags) -> Result<Finished> {
    let (cfg, runtime) = resolve(command, flags)?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(runtime.threads).build()?;
    let start = Instant::now();
    let dir = RunDir::create(&runtime.out, &cfg.hash())?;
    let (inputs, results, lines) =
        pool.install(|| dispatch(&cfg, &dir)).with_context(|| format!("{} failed", command.name()))?;
    let report = Report { command: command.name(), version: env!("CARGO_PKG_VERSION"), config: &cfg, inputs, results };
    dir.write_json("report.json", &report)?;
    dir.write_json("timing.json", &Timing { wall_seconds: start.elapsed().as_secs_f64(), threads: runtime.threads })?;
    let dir = dir.commit()?;
    Ok(Finished { dir, lines })
}

type Outcome = (Vec<InputEcho>, Value, Vec<String>);

fn dispatch(cfg: &RunConfig, dir: &RunDir) -> Result<Outcome> {
    match cfg.command {
        CommandKind::Stats => stats(cfg, dir),
        CommandKind::Predict => predict(cfg, dir),
        CommandKind::Crossval | CommandKind::SweepTime => crossval(cfg, dir),
        CommandKind::SweepSwarm => sweep_swarm(cfg, dir),
        CommandKind::CompareVersions => versions(cfg, dir),
        CommandKind::Distances => distances(cfg, dir),
    }
}

fn stats(cfg: &RunConfig, dir: &RunDir) -> Result<Outcome> {
    let loaded = cfg.input.iter().map(|p| load(p, &cfg.parse, true)).collect::<Result<Vec<_>>>()?;
    let stats: Vec<GraphStats> = loaded.iter().map(|l| compute_stats(&l.graph)).collect();
    let radar = normalize_stats(&stats).context("normalizing statistics for the radar chart")?;

    let mut w = dir.writer("stats.csv")?;
    writeln!(w, "input,num_nodes,num_edges,mean_degree,density,mean_clustering")?;
    for (l, s) in loaded.iter().zip(&stats) {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            l.echo.path.display(),
            s.num_nodes,
            s.num_edges,
            num(s.mean_degree),
            num(s.density),
            num(s.mean_clustering)
        )?;
    }
    w.flush()?;
    let mut w = dir.writer("radar.csv")?;
    writeln!(w, "input,num_nodes,num_edges,mean_degree,density,mean_clustering")?;
    for (l, r) in loaded.iter().zip(&radar) {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            l.echo.path.display(),
            num(r.num_nodes),
            num(r.num_edges),
            num(r.mean_degree),
            num(r.density),
            num(r.mean_clustering)
        )?;
    }
    w.flush()?;

    let lines = loaded
        .iter()
        .zip(&stats)
        .map(|(l, s)| {
            format!(
                "{}: |V|={} |E|={} <k>={:.3} rho={:.4} C={:.3}",
                l.echo.path.display(),
                s.num_nodes,
                s.num_edges,
                s.mean_degree,
                s.density,
                s.mean_clustering
            )
        })
        .collect();
    let results = json!({ "stats": stats, "normalized": radar });
    Ok((loaded.into_iter().map(|l| l.echo).collect(), results, lines))
}

fn predict(cfg: &RunConfig, dir: &RunDir) -> Result<Outcome> {
    let l = load(&cfg.input[0], &cfg.parse, true)?;
    let method = &cfg.methods[0];
    let t = cfg.times[0];
    let k = cfg.k.expect("resolved");
    let table = score_tables(&l.graph, method, &[t])?.pop().expect("one time");
    write_top_k(&table, k, dir.writer("predictions.tsv")?)?;
    if cfg.save_scores {
        write_scores(&table, Precision::Double, dir.writer("scores.bin")?)?;
    }
    let top: Vec<(String, String, f64)> = table
        .top_k(k)
        .into_iter()
        .map(|((u, v), s)| (l.graph.label(u).to_string(), l.graph.label(v).to_string(), s))
        .collect();
    let mut lines = vec![format!("{} predictions from {} candidate pairs", top.len(), table.len())];
    if let Some((u, v, s)) = top.first() {
        lines.push(format!("top: {u} {v} {s:.6}"));
    }
    let results = json!({
        "method": method.method_id(),
        "time": t,
        "k": k,
        "candidates": table.len(),
        "predictions": top,
    });
    Ok((vec![l.echo], results, lines))
}

/// Trial rows and summaries without the curves, which go to their own files.
#[derive(Serialize)]
struct ReportEcho<'a> {
    provenance: &'a Provenance,
    aggregate: &'a Aggregate,
    trials: Vec<Value>,
}

fn echo(r: &EvaluationReport) -> ReportEcho<'_> {
    ReportEcho {
        provenance: &r.provenance,
        aggregate: &r.aggregate,
        trials: r
            .trials
            .iter()
            .map(|t| {
                json!({
                    "repeat": t.repeat, "fold": t.fold, "positives": t.positives,
                    "negatives": t.negatives, "auroc": t.auroc, "aupr": t.aupr,
                })
            })
            .collect(),
    }
}

fn write_summary(dir: &RunDir, reports: &[EvaluationReport]) -> Result<()> {
    let mut w = dir.writer("summary.csv")?;
    writeln!(w, "method,walkers,time,removal,trials,auroc_mean,auroc_std,aupr_mean,aupr_std")?;
    for r in reports {
        let p = &r.provenance;
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            p.method,
            p.walkers.map(|m| m.to_string()).unwrap_or_default(),
            num(p.time),
            p.removal_fraction.map(num).unwrap_or_default(),
            r.trials.len(),
            num(r.aggregate.auroc.mean),
            num(r.aggregate.auroc.std),
            num(r.aggregate.aupr.mean),
            num(r.aggregate.aupr.std)
        )?;
    }
    w.flush()?;
    let mut w = dir.writer("trials.csv")?;
    writeln!(w, "method,walkers,time,repeat,fold,positives,negatives,auroc,aupr")?;
    for r in reports {
        let p = &r.provenance;
        for t in &r.trials {
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{}",
                p.method,
                p.walkers.map(|m| m.to_string()).unwrap_or_default(),
                num(p.time),
                t.repeat,
                t.fold,
                t.positives,
                t.negatives,
                num(t.auroc),
                num(t.aupr)
            )?;
        }
    }
    w.flush()?;
    Ok(())
}

fn write_curves(dir: &RunDir, reports: &[EvaluationReport]) -> Result<()> {
    let mut roc = dir.writer("curves_roc.csv")?;
    let mut pr = dir.writer("curves_pr.csv")?;
    let mut tp = dir.writer("curves_tp.csv")?;
    writeln!(roc, "method,time,repeat,fold,fpr,tpr")?;
    writeln!(pr, "method,time,repeat,fold,recall,precision")?;
    writeln!(tp, "method,time,repeat,fold,rank,tp")?;
    for r in reports {
        let (m, t) = (&r.provenance.method, num(r.provenance.time));
        for trial in &r.trials {
            let key = format!("{m},{t},{},{}", trial.repeat, trial.fold);
            for (x, y) in &trial.curves.roc {
                writeln!(roc, "{key},{},{}", num(*x), num(*y))?;
            }
            for (x, y) in &trial.curves.pr {
                writeln!(pr, "{key},{},{}", num(*x), num(*y))?;
            }
            for (x, y) in &trial.curves.tp_at_rank {
                writeln!(tp, "{key},{x},{y}")?;
            }
        }
    }
    roc.flush()?;
    pr.flush()?;
    tp.flush()?;
    Ok(())
}

fn summary_line(r: &EvaluationReport) -> String {
    let p = &r.provenance;
    format!(
        "{} M={} t={}: AuROC {:.4} ± {:.4}, AuPR {:.4} ± {:.4}",
        p.method,
        p.walkers.map(|m| m.to_string()).unwrap_or_else(|| "-".into()),
        p.time,
        r.aggregate.auroc.mean,
        r.aggregate.auroc.std,
        r.aggregate.aupr.mean,
        r.aggregate.aupr.std
    )
}

fn crossval(cfg: &RunConfig, dir: &RunDir) -> Result<Outcome> {
    let l = load(&cfg.input[0], &cfg.parse, true)?;
    let plan = FoldPlan::new(cfg.removal.expect("resolved"), cfg.seed)?;
    let mut reports = Vec::new();
    for method in &cfg.methods {
        match cfg.command {
            CommandKind::Crossval => reports.push(run_crossval(&l.graph, &plan, method, cfg.times[0])?),
            _ => reports.extend(sweep_time(&l.graph, &plan, method, &cfg.times)?),
        }
    }
    write_summary(dir, &reports)?;
    if cfg.command == CommandKind::Crossval {
        write_curves(dir, &reports)?;
    }
    let lines = reports.iter().map(summary_line).collect();
    let results = json!({ "fold_plan": plan, "reports": reports.iter().map(echo).collect::<Vec<_>>() });
    Ok((vec![l.echo], results, lines))
}

fn sweep_swarm(cfg: &RunConfig, dir: &RunDir) -> Result<Outcome> {
    let l = load(&cfg.input[0], &cfg.parse, true)?;
    let plan = FoldPlan::new(cfg.removal.expect("resolved"), cfg.seed)?;
    let mut reports = Vec::new();
    for method in &cfg.methods {
        let MethodSpec::Swarm { sampler, .. } = method else { unreachable!("validated") };
        let (chiral, total) = sweep_swarm_size_paired(&l.graph, &plan, sampler, &cfg.walkers_list, cfg.times[0])?;
        reports.extend(chiral);
        reports.extend(total);
    }
    write_summary(dir, &reports)?;
    let lines = reports.iter().map(summary_line).collect();
    let results = json!({ "fold_plan": plan, "reports": reports.iter().map(echo).collect::<Vec<_>>() });
    Ok((vec![l.echo], results, lines))
}

fn versions(cfg: &RunConfig, dir: &RunDir) -> Result<Outcome> {
    let old = load(&cfg.input[0], &cfg.parse, true)?;
    let new = load(cfg.input_new.as_ref().expect("resolved"), &cfg.parse, false)?;
    let k = cfg.k.expect("resolved");
    let r = compare_versions(&old.graph, &new.graph, &cfg.methods[0], cfg.times[0], k)?;
    let mut w = dir.writer("predictions.tsv")?;
    for (u, v, s) in &r.top {
        writeln!(w, "{u}\t{v}\t{s:?}")?;
    }
    w.flush()?;
    let (status, lines) = if r.relevant == 0 {
        (NO_LINKS.to_string(), vec![format!("{NO_LINKS}: the new version adds no links between shared nodes")])
    } else {
        let ap = r.ap_at_k.map(|a| format!("{a:.4}")).unwrap_or_else(|| "undefined (no hits)".into());
        (
            "ok".to_string(),
            vec![format!("{}: AP@{} = {ap}, {} of {} new links in the top {}", r.method, r.k, r.hits, r.relevant, r.k)],
        )
    };
    let results = json!({ "status": status, "report": r });
    Ok((vec![old.echo, new.echo], results, lines))
}

fn distances(cfg: &RunConfig, dir: &RunDir) -> Result<Outcome> {
    let l = load(&cfg.input[0], &cfg.parse, true)?;
    let (graph, trial) = match (cfg.fold, cfg.removal) {
        (Some(fold), Some(removal)) => {
            let plan = FoldPlan::new(removal, cfg.seed)?;
            let mut trials = make_folds(&l.graph, &plan)?;
            if fold >= trials.len() {
                bail!("fold {fold} out of range: the plan has {} trials", trials.len());
            }
            let t = trials.swap_remove(fold);
            (t.observed, Some(json!({ "fold_plan": plan, "trial": fold, "repeat": t.repeat, "fold": t.fold })))
        }
        _ => (l.graph.clone(), None),
    };
    let mut reports: Vec<DistanceReport> = Vec::new();
    let mut seen = Vec::new();
    for method in &cfg.methods {
        let MethodSpec::Swarm { sampler, walkers, .. } = method else { unreachable!("validated") };
        if seen.contains(&sampler.kind) {
            bail!("sampler {} requested twice", sampler.kind);
        }
        seen.push(sampler.kind);
        for &kind in &cfg.kinds {
            let r = swarm_distance_distribution(&graph, sampler, *walkers, cfg.times[0], kind)?;
            write_distance_csv(&r, dir.writer(&format!("distances_{kind}_{}.csv", sampler.kind))?)?;
            reports.push(r);
        }
    }
    let mut w = dir.writer("distances_summary.csv")?;
    writeln!(w, "kind,sampler,walkers,time,count,mean,std,min,max,q05,q25,q50,q75,q95")?;
    let mut lines = Vec::new();
    for r in &reports {
        let s = &r.summary;
        let q: Vec<String> = s.quantiles.iter().map(|(_, v)| num(*v)).collect();
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{}",
            r.kind,
            r.sampler.kind,
            r.walkers,
            num(r.time),
            s.count,
            num(s.mean),
            num(s.std),
            num(s.min),
            num(s.max),
            q.join(",")
        )?;
        lines.push(format!(
            "{} {} M={}: mean {:.6} std {:.6} min {:.6} max {:.6}",
            r.kind, r.sampler.kind, r.walkers, s.mean, s.std, s.min, s.max
        ));
    }
    w.flush()?;
    let summaries: Vec<Value> = reports
        .iter()
        .map(|r| json!({ "kind": r.kind, "sampler": r.sampler, "walkers": r.walkers, "time": r.time, "summary": r.summary }))
        .collect();
    let results =
        json!({ "trial": trial, "nodes": graph.node_count(), "edges": graph.edge_count(), "distributions": summaries });
    Ok((vec![l.echo], results, lines))
}
