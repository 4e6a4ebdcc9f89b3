//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Pass criterion numbers as arguments to run
//! a subset, e.g. `cargo test --test acceptance -- 2 3`.
//!
//! Criteria 1, 6, 7 and 8 run on the mouse HINT interactome when
//! `CHIRALQW_MUSCULUS` names the edge-list file. Without it they run on a
//! synthetic power-law-cluster surrogate of the same size and density, and
//! criterion 1 falls back to internal-consistency checks.

mod common;

use std::collections::{BTreeMap, HashSet};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use chiralqw::baselines::{baseline_score, spm_reconstruct, BaselineKind, BaselineSpec};
use chiralqw::evaluation::{average_precision_of_relevance, ranking_metrics};
use chiralqw::graph::Graph;
use chiralqw::walk::{build_generator, diagonalize, sample_phases, SamplerKind, SamplerSpec};
use chiralqw_oracle::{graphs, metrics, scores};
use common::*;
use ndarray::Array2;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;
type Criterion = (usize, &'static str, fn(&Ctx) -> Verdict);

struct Ctx {
    work: tempfile::TempDir,
    dataset: PathBuf,
    real: bool,
}

impl Ctx {
    fn new() -> Ctx {
        let work = tempfile::tempdir().unwrap();
        let (dataset, real) = match std::env::var_os("CHIRALQW_MUSCULUS") {
            Some(p) => (PathBuf::from(p), true),
            None => {
                let path = work.path().join("surrogate.tsv");
                let mut rng = ChaCha8Rng::seed_from_u64(2);
                write_edges(&path, &graphs::powerlaw_cluster(1486, 0.632, 0.2, &mut rng));
                (path, false)
            }
        };
        Ctx { work, dataset, real }
    }

    fn out(&self) -> String {
        self.work.path().join("runs").to_string_lossy().into_owned()
    }

    fn data(&self) -> String {
        self.dataset.to_string_lossy().into_owned()
    }

    fn label(&self) -> &'static str {
        if self.real {
            "mouse HINT"
        } else {
            "surrogate"
        }
    }
}

fn cli(args: &[&str]) -> Result<Output, String> {
    let out = chiralqw(args);
    if out.ok {
        Ok(out)
    } else {
        Err(format!("chiralqw {} failed: {}", args[0], out.stderr.trim()))
    }
}

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn f(row: &BTreeMap<String, String>, key: &str) -> f64 {
    row[key].parse().unwrap()
}

fn max_abs_diff(a: &Array2<f64>, b: &Array2<f64>) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn table_1(ctx: &Ctx) -> Verdict {
    let run = cli(&["stats", "--input", &ctx.data(), "--out", &ctx.out()])?;
    let row = &csv_rows(&run.dir().join("stats.csv"))[0];
    let (v, e) = (f(row, "num_nodes"), f(row, "num_edges"));
    let (k, rho, c) = (f(row, "mean_degree"), f(row, "density"), f(row, "mean_clustering"));
    let printed = format!("|V|={v} |E|={e} <k>={k:.3} rho={rho:.4} C={c:.3}");
    if ctx.real {
        let want = ("1486", "2423", "3.261", "0.0022", "0.108");
        let got = (v.to_string(), e.to_string(), format!("{k:.3}"), format!("{rho:.4}"), format!("{c:.3}"));
        check(
            got == (want.0.into(), want.1.into(), want.2.into(), want.3.into(), want.4.into()),
            format!("{printed} differs from the published row"),
        )?;
        return Ok(printed);
    }
    check((k - 2.0 * e / v).abs() < 1e-12, format!("<k>={k} but 2|E|/|V|={}", 2.0 * e / v))?;
    check((rho - 2.0 * e / (v * (v - 1.0))).abs() < 1e-15, "density is not 2|E|/(|V|(|V|-1))")?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let edges = graphs::powerlaw_cluster(1486, 0.632, 0.2, &mut rng);
    let brute = graphs::mean_clustering(1486, &edges);
    check((c - brute).abs() < 1e-12, format!("C={c} but triple enumeration gives {brute}"))?;
    check(v == 1486.0 && e == edges.len() as f64, "node or edge count differs from the generated file")?;
    Ok(format!("degraded to internal consistency (no snapshot supplied): {printed}"))
}

fn propagation(_: &Ctx) -> Verdict {
    let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
    let p = diagonalize(&build_generator(&path, None).unwrap()).unwrap();
    let mut worst: f64 = 0.0;
    for i in 1..=50 {
        let t = i as f64 / 10.0;
        let want = ((1.0 - (2f64.sqrt() * t).cos()) / 2.0).powi(2);
        worst = worst.max((p.transition_matrix(t)[[0, 2]] - want).abs());
    }
    check(worst < 1e-10, format!("path P_13 off by {worst:e}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let (mut unit, mut stoch, mut comp): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for i in 0..200 {
        let n = rng.random_range(2..=100);
        let extra = rng.random_range(0..=2 * n);
        let g = Graph::from_edges(n, &graphs::random_connected(n, extra, &mut rng)).unwrap();
        let phases = sample_phases(&g, &SamplerSpec::new(SamplerKind::UniformFull, i));
        let prop = diagonalize(&build_generator(&g, Some(&phases)).unwrap()).unwrap();
        let (s, t) = (rng.random_range(0.0..3.0), rng.random_range(0.0..3.0));
        let u = prop.unitary(t);
        let uu = u.dot(&u.t().mapv(|z| z.conj()));
        unit = unit.max((uu - Array2::<Complex64>::eye(n)).iter().map(|z| z.norm()).fold(0.0, f64::max));
        let pm = prop.transition_matrix(t);
        for axis in [0, 1] {
            let sums = pm.sum_axis(ndarray::Axis(axis));
            stoch = stoch.max(sums.iter().map(|x| (x - 1.0).abs()).fold(0.0, f64::max));
        }
        let composed = prop.unitary(s).dot(&u) - prop.unitary(s + t);
        comp = comp.max(composed.iter().map(|z| z.norm()).fold(0.0, f64::max));
    }
    check(unit < 1e-10, format!("unitarity error {unit:e}"))?;
    check(stoch < 1e-10, format!("stochasticity error {stoch:e}"))?;
    check(comp < 1e-10, format!("composition error {comp:e}"))?;
    Ok(format!("path error {worst:.1e}; 200 generators: unitarity {unit:.1e}, stochasticity {stoch:.1e}, composition {comp:.1e}"))
}

fn tree_gauge(_: &Ctx) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let n = rng.random_range(2..=60);
        let g = Graph::from_edges(n, &graphs::random_tree(n, &mut rng)).unwrap();
        let phases = sample_phases(&g, &SamplerSpec::new(SamplerKind::UniformFull, 100 + i));
        let chiral = diagonalize(&build_generator(&g, Some(&phases)).unwrap()).unwrap();
        let plain = diagonalize(&build_generator(&g, None).unwrap()).unwrap();
        for t in [0.3, 1.0, 2.7] {
            worst = worst.max(max_abs_diff(&chiral.transition_matrix(t), &plain.transition_matrix(t)));
        }
    }
    check(worst < 1e-9, format!("trees differ by {worst:e}"))?;
    Ok(format!("50 trees, max entrywise difference {worst:.1e}"))
}

fn metric_oracles(_: &Ctx) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    let mut worst: f64 = 0.0;
    let mut done = 0;
    while done < 1000 {
        let len = rng.random_range(2..300);
        let levels = rng.random_range(1..20);
        let scores: Vec<f64> = (0..len).map(|_| rng.random_range(0..levels) as f64 / 7.0).collect();
        let labels: Vec<bool> = (0..len).map(|_| rng.random_bool(0.3)).collect();
        if labels.iter().all(|&l| l) || labels.iter().all(|&l| !l) {
            continue;
        }
        let got = ranking_metrics(&scores, &labels).map_err(|e| e.to_string())?.auroc;
        worst = worst.max((got - metrics::auroc_trapezoid(&scores, &labels)).abs());
        done += 1;
    }
    check(worst < 1e-12, format!("midrank vs trapezoid differ by {worst:e}"))?;
    // 5/6 has no exact binary form; the hand value is the defining sum
    // (1/1 + 2/3) / 2 evaluated in floating point
    let five_sixths = average_precision_of_relevance(&[true, false, true]);
    check(five_sixths == Some((1.0 + 2.0 / 3.0) / 2.0), format!("AP of [+,-,+] is {five_sixths:?}"))?;
    check(five_sixths == metrics::ap_at_k(&[true, false, true], 3), "AP of [+,-,+] differs from the oracle")?;
    let all = average_precision_of_relevance(&[true; 7]);
    check(all == Some(1.0), format!("all-relevant AP is {all:?}"))?;
    Ok(format!("1000 vectors, max AuROC difference {worst:.1e}; AP hand cases exact"))
}

fn residual_gap(n: usize, edges: &[(usize, usize)], pert: &[(usize, usize)]) -> f64 {
    let kept: Vec<(usize, usize)> = edges.iter().copied().filter(|e| !pert.contains(e)).collect();
    let a = scores::adjacency(n, &kept);
    let m = nalgebra::DMatrix::from_fn(n, n, |i, j| if a[i][j] { 1.0 } else { 0.0 });
    let mut ev: Vec<f64> = nalgebra::SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
}

fn baseline_oracles(_: &Ctx) -> Verdict {
    type Oracle = fn(&[Vec<bool>], usize, usize) -> f64;
    let cases: [(BaselineKind, Oracle, f64); 4] = [
        (BaselineKind::Cn, scores::common_neighbours, 0.0),
        (BaselineKind::Aa, scores::adamic_adar, 1e-9),
        (BaselineKind::Pa, scores::preferential_attachment, 0.0),
        (BaselineKind::L3, scores::l3, 1e-9),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for _ in 0..20 {
        let n = rng.random_range(4..=50);
        let edges = graphs::erdos_renyi(n, rng.random_range(0.05..0.4), &mut rng);
        let g = Graph::from_edges(n, &edges).unwrap();
        let a = scores::adjacency(n, &edges);
        for (kind, oracle, tol) in cases {
            let table = baseline_score(&g, &BaselineSpec::new(kind)).map_err(|e| e.to_string())?;
            for ((j, k), s) in table.iter() {
                let want = oracle(&a, j, k);
                check((s - want).abs() <= tol, format!("{kind} ({j},{k}) on n={n}: {s} vs {want}"))?;
            }
        }
    }
    let (mut checked, mut drawn, mut worst) = (0, 0, 0.0f64);
    while checked < 20 {
        drawn += 1;
        check(drawn < 2000, "could not draw SPM fixtures with a simple residual spectrum")?;
        let n = rng.random_range(8..=30);
        let edges = graphs::erdos_renyi(n, rng.random_range(0.15..0.5), &mut rng);
        let g = Graph::from_edges(n, &edges).unwrap();
        if g.edge_count() < 2 {
            continue;
        }
        let mut pert = g.edges().to_vec();
        pert.shuffle(&mut rng);
        pert.truncate((g.edge_count() / 10).max(1));
        if residual_gap(n, g.edges(), &pert) < 1e-3 {
            continue;
        }
        checked += 1;
        let got = spm_reconstruct(&g, &pert).map_err(|e| e.to_string())?;
        let want = scores::spm(n, g.edges(), &pert);
        for ((j, k), x) in got.indexed_iter() {
            worst = worst.max((x - want[(j, k)]).abs());
        }
    }
    check(worst < 1e-6, format!("SPM differs from the reconstruction oracle by {worst:e}"))?;
    Ok(format!("CN/AA/PA/L3 on 20 graphs; SPM on 20 simple-spectrum graphs, max difference {worst:.1e}"))
}

/// Mean AuPR per (method, walkers) from a summary file.
fn aupr_table(dir: &Path) -> BTreeMap<(String, usize), (f64, f64, usize)> {
    csv_rows(&dir.join("summary.csv"))
        .iter()
        .map(|r| {
            let m = r["walkers"].parse().unwrap_or(0);
            ((r["method"].clone(), m), (f(r, "aupr_mean"), f(r, "aupr_std"), r["trials"].parse().unwrap()))
        })
        .collect()
}

fn swarm_convergence(ctx: &Ctx) -> Verdict {
    let sizes = [1usize, 2, 5, 10, 15];
    let run = cli(&[
        "sweep-swarm",
        "--input",
        &ctx.data(),
        "--method",
        "swarm:uniform,swarm:pi2",
        "--walkers-list",
        "1,2,5,10,15",
        "--removal",
        "0.1",
        "--time",
        "1",
        "--seed",
        "0",
        "--out",
        &ctx.out(),
    ])?;
    let tab = aupr_table(&run.dir());
    let series = |id: &str| -> Vec<(f64, f64, usize)> { sizes.iter().map(|&m| tab[&(id.to_string(), m)]).collect() };
    let uni = series("qw:swarm:uniform_full");
    let uni_nc = series("qw:swarm:uniform_full+nc");
    let pi2 = series("qw:swarm:quarter_pi_balanced");
    let pi2_nc = series("qw:swarm:quarter_pi_balanced+nc");
    let fmt = |s: &[(f64, f64, usize)]| s.iter().map(|x| format!("{:.4}", x.0)).collect::<Vec<_>>().join(" ");
    let detail = format!(
        "[{}] uniform {} | uniform+nc {} | pi2 {} | pi2+nc {}",
        ctx.label(),
        fmt(&uni),
        fmt(&uni_nc),
        fmt(&pi2),
        fmt(&pi2_nc)
    );
    println!("    criterion 6 AuPR by M = {sizes:?}: {detail}");

    let mut failures = Vec::new();
    for (i, w) in uni.windows(2).enumerate() {
        // noise: standard error of the mean over the trials, larger of the two
        let noise = w[0].1.max(w[1].1) / (w[0].2 as f64).sqrt();
        if w[1].0 < w[0].0 - noise {
            failures.push(format!(
                "uniform mean drops from M={} to M={} beyond noise {noise:.4}",
                sizes[i],
                sizes[i + 1]
            ));
        }
    }
    let rel = (uni[3].0 - uni[4].0).abs() / uni[4].0;
    if rel > 0.02 {
        failures.push(format!("uniform M=10 is {:.2}% from M=15", 100.0 * rel));
    }
    if pi2[4].0 < uni[4].0 {
        failures.push(format!("pi2 converged AuPR {:.4} below uniform {:.4}", pi2[4].0, uni[4].0));
    }
    for (i, (a, b)) in uni.iter().zip(&uni_nc).enumerate() {
        if b.0 <= a.0 {
            failures.push(format!("adding nc does not raise uniform AuPR at M={}", sizes[i]));
        }
    }
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(failures.join("; "))
    }
}

fn time_dependence(ctx: &Ctx) -> Verdict {
    let run = cli(&[
        "sweep-time",
        "--input",
        &ctx.data(),
        "--method",
        "nc,swarm:pi8,swarm:pi2",
        "--walkers",
        "10",
        "--include-nc",
        "true",
        "--removal",
        "0.5",
        "--times",
        "0.25,0.5,1,2,4,8",
        "--seed",
        "0",
        "--out",
        &ctx.out(),
    ])?;
    let rows = csv_rows(&run.dir().join("summary.csv"));
    let curve = |id: &str| -> Vec<(f64, f64)> {
        rows.iter().filter(|r| r["method"] == id).map(|r| (f(r, "time"), f(r, "aupr_mean"))).collect()
    };
    let nc = curve("qw:nc");
    let pi8 = curve("qw:swarm:eighth_pi+nc");
    let pi2 = curve("qw:swarm:quarter_pi_balanced+nc");
    let best = |c: &[(f64, f64)]| c.iter().map(|x| x.1).fold(f64::NEG_INFINITY, f64::max);
    let gain8 = best(&pi8) / best(&nc) - 1.0;
    let gain2 = best(&pi2) / best(&nc) - 1.0;
    let fmt = |c: &[(f64, f64)]| c.iter().map(|x| format!("{:.4}", x.1)).collect::<Vec<_>>().join(" ");
    let detail = format!(
        "[{}] gains pi8 {:+.2}%, pi2 {:+.2}%; AuPR by t: nc {} | pi8 {} | pi2 {}",
        ctx.label(),
        100.0 * gain8,
        100.0 * gain2,
        fmt(&nc),
        fmt(&pi8),
        fmt(&pi2)
    );
    println!("    criterion 7: {detail}");
    let mut failures = Vec::new();
    if !(0.03..=0.09).contains(&gain8) {
        failures.push(format!("pi8 gain {:.2}% outside [3%, 9%]", 100.0 * gain8));
    }
    if !(0.05..=0.12).contains(&gain2) {
        failures.push(format!("pi2 gain {:.2}% outside [5%, 12%]", 100.0 * gain2));
    }
    for i in [4, 5] {
        if pi8[i].1 < nc[i].1 || pi2[i].1 < nc[i].1 {
            failures.push(format!("a swarm falls below nc at t={}", nc[i].0));
        }
    }
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(failures.join("; "))
    }
}

fn distances(ctx: &Ctx) -> Verdict {
    let run = cli(&[
        "distances",
        "--input",
        &ctx.data(),
        "--method",
        "swarm:uniform,swarm:pi2",
        "--walkers",
        "10",
        "--time",
        "1",
        "--removal",
        "0.1",
        "--fold",
        "0",
        "--seed",
        "0",
        "--out",
        &ctx.out(),
    ])?;
    let dir = run.dir();
    let mut failures = Vec::new();
    let mut min_qc = f64::INFINITY;
    for s in ["uniform_full", "quarter_pi_balanced"] {
        let rows = csv_rows(&dir.join(format!("distances_qc_{s}.csv")));
        if rows.len() != 11 {
            failures.push(format!("{s}: {} qc values, expected 11", rows.len()));
        }
        for r in &rows {
            let d = f(r, "distance");
            min_qc = min_qc.min(d);
            if d <= 0.99 {
                failures.push(format!("{s} walker {}: D_QC = {d:.4}", r["walker"]));
            }
        }
    }
    let summary: BTreeMap<(String, String), (f64, f64)> = csv_rows(&dir.join("distances_summary.csv"))
        .iter()
        .map(|r| ((r["kind"].clone(), r["sampler"].clone()), (f(r, "mean"), f(r, "std"))))
        .collect();
    let uni = summary[&("pairwise".to_string(), "uniform_full".to_string())];
    let pi2 = summary[&("pairwise".to_string(), "quarter_pi_balanced".to_string())];
    if pi2.0 <= uni.0 {
        failures.push(format!("pairwise mean pi2 {:.4} not above uniform {:.4}", pi2.0, uni.0));
    }
    if pi2.1 >= uni.1 {
        failures.push(format!("pairwise std pi2 {:.4} not below uniform {:.4}", pi2.1, uni.1));
    }
    let detail = format!(
        "[{}] min D_QC {min_qc:.5}; pairwise mean/std uniform {:.4}/{:.4}, pi2 {:.4}/{:.4}",
        ctx.label(),
        uni.0,
        uni.1,
        pi2.0,
        pi2.1
    );
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{}; {detail}", failures.join("; ")))
    }
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    Graph::from_edges(n, edges).unwrap().components().len() == 1
}

fn versions(ctx: &Ctx) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(91);
    let dir = ctx.work.path().join("versions");
    std::fs::create_dir_all(&dir).unwrap();
    let mut hits = 0;
    for i in 0..20 {
        let n = rng.random_range(20..=200);
        let extra = rng.random_range(n / 2..=2 * n);
        let new_edges = graphs::random_connected(n, extra, &mut rng);
        // drop edges while the old version stays connected, so no node is lost
        let mut order = new_edges.clone();
        order.shuffle(&mut rng);
        let mut old_edges = new_edges.clone();
        for e in order.iter().take(new_edges.len() / 5) {
            let trial: Vec<(usize, usize)> = old_edges.iter().copied().filter(|x| x != e).collect();
            if connected(n, &trial) {
                old_edges = trial;
            }
        }
        let (old_p, new_p) = (dir.join(format!("old{i}.tsv")), dir.join(format!("new{i}.tsv")));
        write_edges(&old_p, &old_edges);
        write_edges(&new_p, &new_edges);
        let a = scores::adjacency(n, &old_edges);
        let old_set: HashSet<(usize, usize)> = old_edges.iter().copied().collect();
        let new_set: HashSet<(usize, usize)> = new_edges.iter().copied().collect();
        let label = |v: usize| format!("g{v}");
        for (method, oracle) in [
            ("cn", scores::common_neighbours as fn(&[Vec<bool>], usize, usize) -> f64),
            ("pa", scores::preferential_attachment),
        ] {
            // brute force over label pairs, ties in label order like the parser's node order
            let mut ranking: Vec<((String, String), f64, bool)> = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if !old_set.contains(&(u, v)) {
                        let (lu, lv) = (label(u), label(v));
                        let pair = if lu < lv { (lu, lv) } else { (lv, lu) };
                        ranking.push((pair, oracle(&a, u, v), new_set.contains(&(u, v))));
                    }
                }
            }
            ranking.sort_by(|x, y| y.1.total_cmp(&x.1).then_with(|| x.0.cmp(&y.0)));
            let k = 100.min(ranking.len());
            let rel: Vec<bool> = ranking.iter().map(|x| x.2).collect();
            let want = metrics::ap_at_k(&rel, k);
            let run = cli(&[
                "compare-versions",
                "--input",
                old_p.to_str().unwrap(),
                "--input-new",
                new_p.to_str().unwrap(),
                "--method",
                method,
                "--k",
                "100",
                "--out",
                &ctx.out(),
            ])?;
            let r = report(&run.dir());
            let got = r["results"]["report"]["ap_at_k"].as_f64();
            check(got == want, format!("instance {i} {method}: AP@100 {got:?} vs brute force {want:?}"))?;
            let top: Vec<(String, String)> = std::fs::read_to_string(run.dir().join("predictions.tsv"))
                .unwrap()
                .lines()
                .map(|l| {
                    let f: Vec<&str> = l.split('\t').collect();
                    (f[0].to_string(), f[1].to_string())
                })
                .collect();
            let brute: Vec<(String, String)> = ranking[..k].iter().map(|x| x.0.clone()).collect();
            check(top == brute, format!("instance {i} {method}: top-100 order differs"))?;
            hits += usize::from(want.is_some());
        }
    }
    Ok(format!("20 instances x CN, PA: AP@100 and top-100 identical ({hits} with hits)"))
}

fn determinism(ctx: &Ctx) -> Verdict {
    let dir = ctx.work.path().join("determinism");
    std::fs::create_dir_all(&dir).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let new_edges = graphs::powerlaw_cluster(60, 0.6, 0.3, &mut rng);
    let old_edges: Vec<(usize, usize)> =
        new_edges.iter().copied().filter(|&(u, v)| (u + v) % 9 != 0 || u < 3).collect();
    let (g, g_old) = (dir.join("g.tsv"), dir.join("g_old.tsv"));
    write_edges(&g, &new_edges);
    write_edges(&g_old, &old_edges);
    let (g, g_old) = (g.to_string_lossy().into_owned(), g_old.to_string_lossy().into_owned());
    let commands: Vec<Vec<&str>> = vec![
        vec!["stats", "--input", &g, "--input", &g_old],
        vec!["predict", "--input", &g, "--method", "swarm:uniform", "--walkers", "4", "--save-scores", "true"],
        vec!["predict", "--input", &g, "--method", "spm", "--spm-runs", "4"],
        vec!["crossval", "--input", &g, "--method", "nc,swarm:pi2,swarm:pi8,cn,aa,pa,l3,spm", "--walkers", "3"],
        vec![
            "sweep-time",
            "--input",
            &g,
            "--method",
            "swarm:uniform",
            "--walkers",
            "3",
            "--times",
            "0.5,1,2",
            "--removal",
            "0.2",
        ],
        vec!["sweep-swarm", "--input", &g, "--method", "swarm:pi2,swarm:uniform", "--walkers-list", "1,2,4"],
        vec![
            "compare-versions",
            "--input",
            &g_old,
            "--input-new",
            &g,
            "--method",
            "swarm",
            "--walkers",
            "3",
            "--k",
            "20",
        ],
        vec!["distances", "--input", &g, "--method", "swarm:uniform,swarm:pi2", "--walkers", "3"],
    ];
    let out = ctx.out();
    for args in &commands {
        let mut runs = Vec::new();
        for threads in ["1", "8", "1"] {
            let full = [&args[..], &["--threads", threads, "--out", &out]].concat();
            runs.push(cli(&full)?.dir());
        }
        let files: Vec<_> = runs.iter().map(|d| primary_files(d)).collect();
        check(files[0].len() >= 2, format!("{} wrote too few files", args[0]))?;
        check(files[0] == files[1] && files[0] == files[2], format!("{} outputs differ across reruns", args[0]))?;
        let hash = |d: &PathBuf| d.file_name().unwrap().to_string_lossy().split('-').nth(1).map(str::to_string);
        check(hash(&runs[0]) == hash(&runs[1]), format!("{} config hash depends on threads", args[0]))?;
    }
    Ok(format!("{} invocations x threads 1, 8, 1: primary outputs byte-identical", commands.len()))
}

fn main() -> ExitCode {
    let selected: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let criteria: [Criterion; 10] = [
        (1, "dataset statistics", table_1),
        (2, "analytic propagation and walk invariants", propagation),
        (3, "tree gauge invariance", tree_gauge),
        (4, "metric oracles", metric_oracles),
        (5, "baseline oracles", baseline_oracles),
        (6, "swarm convergence", swarm_convergence),
        (7, "time dependence", time_dependence),
        (8, "distance diagnostics", distances),
        (9, "version comparison vs brute force", versions),
        (10, "determinism across thread widths", determinism),
    ];
    let ctx = Ctx::new();
    let mut failed = 0;
    let mut lines = Vec::new();
    for (id, name, run) in criteria {
        if !selected.is_empty() && !selected.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let verdict = std::panic::catch_unwind(|| run(&ctx)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let line = match verdict {
            Ok(d) => format!("PASS criterion {id} ({name}, {secs:.0}s): {d}"),
            Err(d) => {
                failed += 1;
                format!("FAIL criterion {id} ({name}, {secs:.0}s): {d}")
            }
        };
        println!("{line}");
        lines.push(line);
    }
    println!("\nacceptance summary:");
    for l in &lines {
        println!("  {}", l.split(':').next().unwrap());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
