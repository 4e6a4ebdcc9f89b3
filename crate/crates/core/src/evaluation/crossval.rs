use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::folds::{make_folds, FoldPlan, Trial};
use super::metrics::{ranking_metrics, Curves, MAX_CURVE_POINTS};
use crate::baselines::{baseline_score, BaselineSpec};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scoring::{score_single, swarm_method_id, swarm_score_grid, swarm_score_grid_paired, ScoreTable};
use crate::walk::{build_generator, diagonalize, SamplerSpec};

/// What produces the scores of a trial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MethodSpec {
    /// Single zero-phase walker.
    NonChiral,
    Swarm {
        sampler: SamplerSpec,
        walkers: usize,
        include_nonchiral: bool,
    },
    Baseline(BaselineSpec),
}

impl MethodSpec {
    pub fn method_id(&self) -> String {
        match self {
            MethodSpec::NonChiral => "qw:nc".to_string(),
            MethodSpec::Swarm { sampler, include_nonchiral, .. } => swarm_method_id(sampler, *include_nonchiral),
            MethodSpec::Baseline(b) => b.method_id(),
        }
    }

    fn provenance(&self, plan: Option<&FoldPlan>, time: f64) -> Provenance {
        let (walkers, sampler, sampler_seed) = match self {
            MethodSpec::NonChiral => (Some(0), None, None),
            MethodSpec::Swarm { sampler, walkers, .. } => {
                (Some(*walkers), Some(sampler.kind.to_string()), Some(sampler.seed))
            }
            MethodSpec::Baseline(b) => (None, None, Some(b.seed)),
        };
        Provenance {
            method: self.method_id(),
            time,
            walkers,
            sampler,
            sampler_seed,
            removal_fraction: plan.map(|p| p.removal_fraction),
            k_folds: plan.map(|p| p.k_folds),
            repeats: plan.map(|p| p.repeats),
            fold_seed: plan.map(|p| p.master_seed),
        }
    }
}

/// Scores of `method` on `graph` at each of `times`, sharing one
/// factorization per walker across all times. Baselines ignore time.
pub fn score_tables<'g>(graph: &'g Graph, method: &MethodSpec, times: &[f64]) -> Result<Vec<ScoreTable<'g>>> {
    if times.is_empty() {
        return Err(Error::invalid("at least one time is required"));
    }
    match method {
        MethodSpec::NonChiral => {
            let prop = diagonalize(&build_generator(graph, None)?)?;
            times.iter().map(|&t| score_single(&prop, graph, t)).collect()
        }
        MethodSpec::Swarm { sampler, walkers, include_nonchiral } => {
            let mut grid = swarm_score_grid(graph, sampler, &[*walkers], times, *include_nonchiral)?;
            Ok(grid.pop().expect("one walker count"))
        }
        MethodSpec::Baseline(spec) => {
            let table = baseline_score(graph, spec)?;
            Ok(times
                .iter()
                .map(|&t| {
                    let mut copy = table.clone();
                    copy.meta_mut().time = t;
                    copy
                })
                .collect())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub method: String,
    pub time: f64,
    pub walkers: Option<usize>,
    pub sampler: Option<String>,
    pub sampler_seed: Option<u64>,
    pub removal_fraction: Option<f64>,
    pub k_folds: Option<usize>,
    pub repeats: Option<usize>,
    pub fold_seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub repeat: usize,
    pub fold: usize,
    pub positives: usize,
    pub negatives: usize,
    pub auroc: f64,
    pub aupr: f64,
    /// Downsampled to at most [`MAX_CURVE_POINTS`] points per curve.
    pub curves: Curves,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanStd {
    pub mean: f64,
    /// Sample standard deviation (`n − 1` denominator); 0 for one trial.
    pub std: f64,
}

impl MeanStd {
    pub fn of(values: &[f64]) -> MeanStd {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let std = if values.len() > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        MeanStd { mean, std }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub auroc: MeanStd,
    pub aupr: MeanStd,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub provenance: Provenance,
    pub trials: Vec<TrialReport>,
    pub aggregate: Aggregate,
}

impl EvaluationReport {
    fn assemble(provenance: Provenance, trials: Vec<TrialReport>) -> Self {
        let auroc: Vec<f64> = trials.iter().map(|t| t.auroc).collect();
        let aupr: Vec<f64> = trials.iter().map(|t| t.aupr).collect();
        let aggregate = Aggregate { auroc: MeanStd::of(&auroc), aupr: MeanStd::of(&aupr) };
        EvaluationReport { provenance, trials, aggregate }
    }
}

/// Metrics of one score table against one trial's removed edges.
pub fn evaluate_ranking(scores: &ScoreTable<'_>, trial: &Trial) -> Result<TrialReport> {
    let g = scores.graph();
    if g.node_count() != trial.observed.node_count() || scores.len() != trial.observed.non_edge_count() {
        return Err(Error::invalid("score table is not defined on this trial's ranked universe"));
    }
    let m = ranking_metrics(scores.values(), &trial.labels())?;
    Ok(TrialReport {
        repeat: trial.repeat,
        fold: trial.fold,
        positives: m.positives,
        negatives: m.negatives,
        auroc: m.auroc,
        aupr: m.aupr,
        curves: m.curves.downsampled(MAX_CURVE_POINTS),
    })
}

/// Runs `score` on every trial in parallel; returns `[trial][column]`.
fn per_trial<F>(trials: &[Trial], score: F) -> Result<Vec<Vec<TrialReport>>>
where
    F: for<'g> Fn(&'g Graph) -> Result<Vec<ScoreTable<'g>>> + Sync,
{
    trials
        .par_iter()
        .map(|trial| {
            let tables = score(&trial.observed)?;
            tables.iter().map(|t| evaluate_ranking(t, trial)).collect::<Result<Vec<_>>>()
        })
        .collect()
}

fn transpose(rows: Vec<Vec<TrialReport>>, columns: usize) -> Vec<Vec<TrialReport>> {
    let mut out: Vec<Vec<TrialReport>> = (0..columns).map(|_| Vec::with_capacity(rows.len())).collect();
    for row in rows {
        for (c, r) in row.into_iter().enumerate() {
            out[c].push(r);
        }
    }
    out
}

pub fn run_crossval(graph: &Graph, plan: &FoldPlan, method: &MethodSpec, t: f64) -> Result<EvaluationReport> {
    Ok(sweep_time(graph, plan, method, &[t])?.pop().expect("one time"))
}

/// One report per time, all evaluated on the same fold draws.
pub fn sweep_time(graph: &Graph, plan: &FoldPlan, method: &MethodSpec, times: &[f64]) -> Result<Vec<EvaluationReport>> {
    if times.is_empty() {
        return Err(Error::invalid("at least one time is required"));
    }
    let trials = make_folds(graph, plan)?;
    let rows = per_trial(&trials, |g| score_tables(g, method, times))?;
    Ok(transpose(rows, times.len())
        .into_iter()
        .zip(times)
        .map(|(trials, &t)| EvaluationReport::assemble(method.provenance(Some(plan), t), trials))
        .collect())
}

/// One report per swarm size. Swarms share their walker prefix, so walker `m`
/// is the same in every swarm of size at least `m`.
pub fn sweep_swarm_size(
    graph: &Graph,
    plan: &FoldPlan,
    sampler: &SamplerSpec,
    walker_counts: &[usize],
    t: f64,
    include_nonchiral: bool,
) -> Result<Vec<EvaluationReport>> {
    if walker_counts.is_empty() {
        return Err(Error::invalid("at least one swarm size is required"));
    }
    let trials = make_folds(graph, plan)?;
    let rows = per_trial(&trials, |g| {
        let grid = swarm_score_grid(g, sampler, walker_counts, &[t], include_nonchiral)?;
        Ok(grid.into_iter().map(|mut row| row.pop().expect("one time")).collect())
    })?;
    Ok(transpose(rows, walker_counts.len())
        .into_iter()
        .zip(walker_counts)
        .map(|(trials, &m)| {
            let method = MethodSpec::Swarm { sampler: *sampler, walkers: m, include_nonchiral };
            EvaluationReport::assemble(method.provenance(Some(plan), t), trials)
        })
        .collect())
}

/// [`sweep_swarm_size`] without and with the non-chiral walker, from one
/// pass over the walkers: `(chiral_only, total)`.
pub fn sweep_swarm_size_paired(
    graph: &Graph,
    plan: &FoldPlan,
    sampler: &SamplerSpec,
    walker_counts: &[usize],
    t: f64,
) -> Result<(Vec<EvaluationReport>, Vec<EvaluationReport>)> {
    if walker_counts.is_empty() {
        return Err(Error::invalid("at least one swarm size is required"));
    }
    let trials = make_folds(graph, plan)?;
    let columns = walker_counts.len();
    let rows = per_trial(&trials, |g| {
        let (chiral, total) = swarm_score_grid_paired(g, sampler, walker_counts, &[t])?;
        Ok(chiral.into_iter().chain(total).map(|mut row| row.pop().expect("one time")).collect())
    })?;
    let mut reports = transpose(rows, 2 * columns)
        .into_iter()
        .enumerate()
        .map(|(c, trials)| {
            let method = MethodSpec::Swarm {
                sampler: *sampler,
                walkers: walker_counts[c % columns],
                include_nonchiral: c >= columns,
            };
            EvaluationReport::assemble(method.provenance(Some(plan), t), trials)
        })
        .collect::<Vec<_>>();
    let total = reports.split_off(columns);
    Ok((reports, total))
}
