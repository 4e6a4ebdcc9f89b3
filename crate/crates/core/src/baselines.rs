//! Classical link-prediction baselines: common neighbours, Adamic–Adar,
//! preferential attachment, L3 and the structural perturbation method.

use std::fmt;
use std::str::FromStr;

use ndarray::Array2;
use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg;
use crate::rng::{self, Purpose};
use crate::scoring::{ScoreMeta, ScoreTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaselineKind {
    Cn,
    Aa,
    Pa,
    L3,
    Spm,
}

impl BaselineKind {
    pub const ALL: [BaselineKind; 5] =
        [BaselineKind::Cn, BaselineKind::Aa, BaselineKind::Pa, BaselineKind::L3, BaselineKind::Spm];

    pub fn as_str(&self) -> &'static str {
        match self {
            BaselineKind::Cn => "cn",
            BaselineKind::Aa => "aa",
            BaselineKind::Pa => "pa",
            BaselineKind::L3 => "l3",
            BaselineKind::Spm => "spm",
        }
    }
}

impl fmt::Display for BaselineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BaselineKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cn" => Ok(BaselineKind::Cn),
            "aa" => Ok(BaselineKind::Aa),
            "pa" => Ok(BaselineKind::Pa),
            "l3" => Ok(BaselineKind::L3),
            "spm" => Ok(BaselineKind::Spm),
            other => Err(Error::invalid(format!("unknown baseline '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BaselineSpec {
    pub kind: BaselineKind,
    /// Fraction of edges moved into the perturbation set per SPM run.
    pub spm_p_h: f64,
    pub spm_runs: usize,
    pub seed: u64,
}

impl BaselineSpec {
    pub fn new(kind: BaselineKind) -> Self {
        BaselineSpec { kind, spm_p_h: 0.1, spm_runs: 10, seed: 0 }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn method_id(&self) -> String {
        format!("baseline:{}", self.kind)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.spm_p_h > 0.0 && self.spm_p_h < 1.0) {
            return Err(Error::invalid(format!("spm_p_h must lie in (0, 1), got {}", self.spm_p_h)));
        }
        if self.spm_runs == 0 {
            return Err(Error::invalid("spm_runs must be at least 1"));
        }
        Ok(())
    }
}

pub fn baseline_score<'g>(graph: &'g Graph, spec: &BaselineSpec) -> Result<ScoreTable<'g>> {
    spec.validate()?;
    let meta = ScoreMeta::new(spec.method_id(), 0.0, 0, spec.seed);
    let values = match spec.kind {
        BaselineKind::Cn => neighbour_sum(graph, |_| 1.0),
        BaselineKind::Aa => neighbour_sum(graph, |d| if d > 1 { 1.0 / (d as f64).ln() } else { 0.0 }),
        BaselineKind::Pa => {
            let d = graph.degrees();
            graph.non_edges().map(|(j, k)| (d[j] * d[k]) as f64).collect()
        }
        BaselineKind::L3 => l3(graph),
        BaselineKind::Spm => {
            let a = spm_average(graph, spec.spm_p_h, spec.spm_runs, spec.seed)?;
            graph.non_edges().map(|(j, k)| a[[j, k]]).collect()
        }
    };
    ScoreTable::new(graph, values, meta)
}

/// `Σ_{u ∈ N(j) ∩ N(k)} weight(d_u)` for every non-edge, accumulated by
/// visiting each neighbour pair of each node once.
fn neighbour_sum(graph: &Graph, weight: impl Fn(usize) -> f64) -> Vec<f64> {
    let mut out = vec![0.0; graph.non_edge_count()];
    for u in 0..graph.node_count() {
        let nbrs = graph.neighbors(u);
        let w = weight(nbrs.len());
        if w == 0.0 {
            continue;
        }
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if let Some(p) = graph.non_edge_position(a, b) {
                    out[p] += w;
                }
            }
        }
    }
    out
}

/// `Σ_{u,v} A_ju A_uv A_vk / √(d_u d_v)` via two sparse products per row.
fn l3(graph: &Graph) -> Vec<f64> {
    let n = graph.node_count();
    let inv_sqrt: Vec<f64> =
        graph.degrees().iter().map(|&d| if d > 0 { 1.0 / (d as f64).sqrt() } else { 0.0 }).collect();
    let mut out = Vec::with_capacity(graph.non_edge_count());
    let mut mid = vec![0.0; n];
    let mut end = vec![0.0; n];
    let mut touched_mid = Vec::new();
    let mut touched_end = Vec::new();
    for j in 0..n {
        for &u in graph.neighbors(j) {
            for &v in graph.neighbors(u) {
                if mid[v] == 0.0 {
                    touched_mid.push(v);
                }
                mid[v] += inv_sqrt[u];
            }
        }
        touched_mid.sort_unstable();
        for &v in &touched_mid {
            let w = mid[v] * inv_sqrt[v];
            for &k in graph.neighbors(v) {
                if k > j {
                    if end[k] == 0.0 {
                        touched_end.push(k);
                    }
                    end[k] += w;
                }
            }
            mid[v] = 0.0;
        }
        touched_mid.clear();
        let adj = graph.neighbors(j);
        let mut cursor = adj.partition_point(|&v| v <= j);
        for (k, &e) in end.iter().enumerate().skip(j + 1) {
            if cursor < adj.len() && adj[cursor] == k {
                cursor += 1;
                continue;
            }
            out.push(e);
        }
        for &k in &touched_end {
            end[k] = 0.0;
        }
        touched_end.clear();
    }
    out
}

/// One SPM draw: `⌈p_h·|E|⌉` edges taken from a seeded shuffle of the sorted
/// edge list form the perturbation set.
pub fn spm_perturbed_matrix(graph: &Graph, p_h: f64, seed: u64) -> Result<Array2<f64>> {
    let removed = spm_draw(graph, p_h, seed)?;
    spm_reconstruct(graph, &removed)
}

fn spm_draw(graph: &Graph, p_h: f64, seed: u64) -> Result<Vec<(usize, usize)>> {
    if graph.edge_count() < 2 {
        return Err(Error::invalid("SPM needs at least two edges"));
    }
    if !(p_h > 0.0 && p_h < 1.0) {
        return Err(Error::invalid(format!("p_h must lie in (0, 1), got {p_h}")));
    }
    let size = (p_h * graph.edge_count() as f64).ceil() as usize;
    if p_h * (graph.edge_count() as f64) < 1.0 {
        return Err(Error::invalid(format!("p_h = {p_h} selects less than one of {} edges", graph.edge_count())));
    }
    let mut edges = graph.edges().to_vec();
    edges.shuffle(&mut rng::stream(seed, 0, Purpose::Perturbation));
    edges.truncate(size);
    Ok(edges)
}

/// First-order perturbed reconstruction with an explicit perturbation set:
/// eigendecompose `A_R = A − ΔA`, shift each eigenvalue by `x_kᵀ ΔA x_k`, and
/// return `Σ_k (λ_k + Δλ_k) x_k x_kᵀ`.
pub fn spm_reconstruct(graph: &Graph, perturbation: &[(usize, usize)]) -> Result<Array2<f64>> {
    for &(a, b) in perturbation {
        if !graph.has_edge(a, b) {
            return Err(Error::invalid(format!("perturbation pair ({a}, {b}) is not an edge")));
        }
    }
    let residual = graph.without_edges(perturbation);
    let (lambda, x) = linalg::symmetric_eigh(&residual.adjacency_matrix())?;
    let mut shifted = lambda;
    for (k, s) in shifted.iter_mut().enumerate() {
        let col = x.column(k);
        *s += perturbation.iter().map(|&(a, b)| 2.0 * col[a] * col[b]).sum::<f64>();
    }
    Ok((&x * &shifted).dot(&x.t()))
}

/// Mean of `runs` perturbed matrices; run `r` uses seed `seed ^ (r + 1)`.
/// Runs are computed in parallel in batches of the pool width and summed in
/// run order.
pub fn spm_average(graph: &Graph, p_h: f64, runs: usize, seed: u64) -> Result<Array2<f64>> {
    if runs == 0 {
        return Err(Error::invalid("spm_runs must be at least 1"));
    }
    let n = graph.node_count();
    let mut acc = Array2::<f64>::zeros((n, n));
    let width = rayon::current_num_threads().max(1);
    let ids: Vec<u64> = (0..runs as u64).collect();
    for batch in ids.chunks(width) {
        let mats: Vec<Array2<f64>> =
            batch.par_iter().map(|&r| spm_perturbed_matrix(graph, p_h, seed ^ (r + 1))).collect::<Result<_>>()?;
        for m in &mats {
            acc += m;
        }
    }
    acc /= runs as f64;
    Ok(acc)
}
