//! Link-prediction scores over the non-edges of an observed graph.
//!
//! A quantum walker scores a non-adjacent pair by `P_jk(t)·(d_j + d_k)`; a
//! swarm keeps the entrywise maximum over its walkers, optionally including
//! the non-chiral walker.

mod persist;

use std::sync::Mutex;

use ndarray::Array2;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::walk::{build_generator, diagonalize, sample_phases, Propagator, SamplerSpec};

pub use persist::{read_scores, write_scores, write_top_k, Precision, ScoreFile};

/// Provenance carried with every [`ScoreTable`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreMeta {
    pub method: String,
    pub time: f64,
    pub walkers: u64,
    pub seed: u64,
}

impl ScoreMeta {
    pub fn new(method: impl Into<String>, time: f64, walkers: u64, seed: u64) -> Self {
        ScoreMeta { method: method.into(), time, walkers, seed }
    }
}

/// One score per non-edge `(j, k)`, `j < k`, in [`Graph::non_edges`] order.
#[derive(Debug, Clone)]
pub struct ScoreTable<'g> {
    graph: &'g Graph,
    values: Vec<f64>,
    meta: ScoreMeta,
}

impl<'g> ScoreTable<'g> {
    pub fn new(graph: &'g Graph, values: Vec<f64>, meta: ScoreMeta) -> Result<Self> {
        if values.len() != graph.non_edge_count() {
            return Err(Error::DimensionMismatch { expected: graph.non_edge_count(), actual: values.len() });
        }
        Ok(ScoreTable { graph, values, meta })
    }

    pub fn from_fn(graph: &'g Graph, meta: ScoreMeta, mut score: impl FnMut(usize, usize) -> f64) -> Self {
        let values = graph.non_edges().map(|(j, k)| score(j, k)).collect();
        ScoreTable { graph, values, meta }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn meta(&self) -> &ScoreMeta {
        &self.meta
    }

    pub fn meta_mut(&mut self) -> &mut ScoreMeta {
        &mut self.meta
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, j: usize, k: usize) -> Option<f64> {
        self.graph.non_edge_position(j, k).map(|i| self.values[i])
    }

    /// `(pair, score)` in storage order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.graph.non_edges().zip(self.values.iter().copied())
    }

    /// Entrywise maximum with another table on the same graph.
    pub fn max_assign(&mut self, other: &ScoreTable<'_>) -> Result<()> {
        if other.values.len() != self.values.len() {
            return Err(Error::DimensionMismatch { expected: self.values.len(), actual: other.values.len() });
        }
        for (a, &b) in self.values.iter_mut().zip(&other.values) {
            if b > *a {
                *a = b;
            }
        }
        Ok(())
    }

    /// Storage positions sorted by descending score; ties keep `(j, k)`
    /// lexicographic order.
    pub fn ranking(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.values.len()).collect();
        order.sort_by(|&a, &b| self.values[b].total_cmp(&self.values[a]));
        order
    }

    /// Highest-scoring `k` pairs in ranking order.
    pub fn top_k(&self, k: usize) -> Vec<((usize, usize), f64)> {
        let pairs: Vec<(usize, usize)> = self.graph.non_edges().collect();
        self.ranking().into_iter().take(k).map(|i| (pairs[i], self.values[i])).collect()
    }
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("evolution time must be finite and non-negative, got {t}")))
    }
}

fn scores_from_transition<'g>(graph: &'g Graph, p: &Array2<f64>, meta: ScoreMeta) -> ScoreTable<'g> {
    let degrees = graph.degrees();
    ScoreTable::from_fn(graph, meta, |j, k| p[[j, k]] * (degrees[j] + degrees[k]) as f64)
}

/// `S(j, k; t) = P_jk(t)·(d_j + d_k)` over the non-edges of `graph`.
pub fn score_single<'g>(propagator: &Propagator, graph: &'g Graph, t: f64) -> Result<ScoreTable<'g>> {
    if propagator.dim() != graph.node_count() {
        return Err(Error::DimensionMismatch { expected: graph.node_count(), actual: propagator.dim() });
    }
    check_time(t)?;
    let meta = ScoreMeta::new(if propagator.is_real() { "qw:nc" } else { "qw:chiral" }, t, 1, 0);
    Ok(scores_from_transition(graph, &propagator.transition_matrix(t), meta))
}

/// Method identifier recorded in score metadata for a swarm.
pub fn swarm_method_id(sampler: &SamplerSpec, include_nonchiral: bool) -> String {
    format!("qw:swarm:{}{}", sampler.kind, if include_nonchiral { "+nc" } else { "" })
}

/// Swarm score for `walkers` chiral walkers drawn from `sampler` (walker `m`
/// uses seed `sampler.seed ^ m`, `m = 1..=walkers`), maximized with the
/// non-chiral walker when `include_nonchiral` is set.
pub fn swarm_score<'g>(
    graph: &'g Graph,
    sampler: &SamplerSpec,
    walkers: usize,
    t: f64,
    include_nonchiral: bool,
) -> Result<ScoreTable<'g>> {
    let mut grid = swarm_score_grid(graph, sampler, &[walkers], &[t], include_nonchiral)?;
    Ok(grid.pop().and_then(|mut row| row.pop()).expect("one count, one time"))
}

/// Swarm scores for several swarm sizes and times from one pass over the
/// walkers. Returns `tables[count][time]`; swarms of different sizes share
/// their walker prefix, so walker `m` is identical in every swarm with at
/// least `m` walkers.
///
/// Walkers run in parallel on the ambient rayon pool. Each walker's
/// propagator is factorized once and reused for every time; its tables are
/// folded into per-segment running maxima and dropped. Since `max` is exact
/// the result does not depend on scheduling.
pub fn swarm_score_grid<'g>(
    graph: &'g Graph,
    sampler: &SamplerSpec,
    walker_counts: &[usize],
    times: &[f64],
    include_nonchiral: bool,
) -> Result<Vec<Vec<ScoreTable<'g>>>> {
    if walker_counts.contains(&0) && !include_nonchiral {
        return Err(Error::EmptySwarm);
    }
    let raw = grid_values(graph, sampler, walker_counts, times, include_nonchiral)?;
    let method = swarm_method_id(sampler, include_nonchiral);
    Ok(raw.tables(graph, sampler, &method, walker_counts, times, include_nonchiral))
}

/// Like [`swarm_score_grid`] but returns both the chiral-only swarm and the
/// swarm that also includes the non-chiral walker, computed from the same
/// walkers: `(chiral[count][time], total[count][time])`.
#[allow(clippy::type_complexity)]
pub fn swarm_score_grid_paired<'g>(
    graph: &'g Graph,
    sampler: &SamplerSpec,
    walker_counts: &[usize],
    times: &[f64],
) -> Result<(Vec<Vec<ScoreTable<'g>>>, Vec<Vec<ScoreTable<'g>>>)> {
    if walker_counts.contains(&0) {
        return Err(Error::EmptySwarm);
    }
    let raw = grid_values(graph, sampler, walker_counts, times, true)?;
    let chiral = raw.tables(graph, sampler, &swarm_method_id(sampler, false), walker_counts, times, false);
    let total = raw.tables(graph, sampler, &swarm_method_id(sampler, true), walker_counts, times, true);
    Ok((chiral, total))
}

struct GridValues {
    /// Distinct requested counts, ascending.
    counts: Vec<usize>,
    /// `chiral[count][time]`, cumulative over walkers `1..=count`.
    chiral: Vec<Vec<Vec<f64>>>,
    nonchiral: Option<Vec<Vec<f64>>>,
}

impl GridValues {
    fn tables<'g>(
        &self,
        graph: &'g Graph,
        sampler: &SamplerSpec,
        method: &str,
        walker_counts: &[usize],
        times: &[f64],
        with_nonchiral: bool,
    ) -> Vec<Vec<ScoreTable<'g>>> {
        walker_counts
            .iter()
            .map(|&m| {
                let idx = self.counts.binary_search(&m).expect("deduplicated from walker_counts");
                times
                    .iter()
                    .enumerate()
                    .map(|(ti, &t)| {
                        let mut values = self.chiral[idx][ti].clone();
                        if with_nonchiral {
                            max_into(&mut values, &self.nonchiral.as_ref().expect("computed when requested")[ti]);
                        }
                        ScoreTable { graph, values, meta: ScoreMeta::new(method, t, m as u64, sampler.seed) }
                    })
                    .collect()
            })
            .collect()
    }
}

fn grid_values(
    graph: &Graph,
    sampler: &SamplerSpec,
    walker_counts: &[usize],
    times: &[f64],
    with_nonchiral: bool,
) -> Result<GridValues> {
    if walker_counts.is_empty() || times.is_empty() {
        return Err(Error::invalid("walker counts and times must be non-empty"));
    }
    for &t in times {
        check_time(t)?;
    }
    let mut counts: Vec<usize> = walker_counts.to_vec();
    counts.sort_unstable();
    counts.dedup();
    let max_walkers = *counts.last().expect("non-empty");

    let empty = || vec![f64::NEG_INFINITY; graph.non_edge_count()];
    // segment s holds walkers in (counts[s-1], counts[s]]
    let segments: Vec<Mutex<Vec<Vec<f64>>>> =
        counts.iter().map(|_| Mutex::new(times.iter().map(|_| empty()).collect())).collect();

    let nonchiral = if with_nonchiral {
        let prop = diagonalize(&build_generator(graph, None)?)?;
        Some(walker_tables(graph, &prop, times))
    } else {
        None
    };

    (1..=max_walkers).into_par_iter().try_for_each(|m| -> Result<()> {
        let phases = sample_phases(graph, &sampler.walker(m as u64));
        let prop = diagonalize(&build_generator(graph, Some(&phases))?)?;
        let tables = walker_tables(graph, &prop, times);
        let seg = counts.partition_point(|&c| c < m);
        let mut acc = segments[seg].lock().expect("no panics while holding the lock");
        for (running, table) in acc.iter_mut().zip(&tables) {
            max_into(running, table);
        }
        Ok(())
    })?;

    let mut running: Vec<Vec<f64>> = times.iter().map(|_| empty()).collect();
    let mut chiral = Vec::with_capacity(counts.len());
    for seg in segments {
        let seg = seg.into_inner().expect("no panics while holding the lock");
        for (acc, part) in running.iter_mut().zip(&seg) {
            max_into(acc, part);
        }
        chiral.push(running.clone());
    }
    Ok(GridValues { counts, chiral, nonchiral })
}

fn walker_tables(graph: &Graph, prop: &Propagator, times: &[f64]) -> Vec<Vec<f64>> {
    let degrees = graph.degrees();
    times
        .iter()
        .map(|&t| {
            let p = prop.transition_matrix(t);
            graph.non_edges().map(|(j, k)| p[[j, k]] * (degrees[j] + degrees[k]) as f64).collect()
        })
        .collect()
}

fn max_into(acc: &mut [f64], other: &[f64]) {
    for (a, &b) in acc.iter_mut().zip(other) {
        if b > *a {
            *a = b;
        }
    }
}
