use std::f64::consts::{FRAC_PI_2, FRAC_PI_8, PI};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::Graph;
use crate::rng::{self, Purpose};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplerKind {
    /// Independent phases from `[-π, π]`.
    UniformFull,
    /// Multiples of π/2, rearranged to balance per-row phase sums.
    QuarterPiBalanced,
    /// Independent phases from `[-π/8, π/8]`.
    EighthPi,
}

impl SamplerKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SamplerKind::UniformFull => "uniform_full",
            SamplerKind::QuarterPiBalanced => "quarter_pi_balanced",
            SamplerKind::EighthPi => "eighth_pi",
        }
    }
}

impl fmt::Display for SamplerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SamplerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "uniform_full" | "uniform" | "pi" => Ok(SamplerKind::UniformFull),
            "quarter_pi_balanced" | "pi2" | "pi/2" => Ok(SamplerKind::QuarterPiBalanced),
            "eighth_pi" | "pi8" | "pi/8" => Ok(SamplerKind::EighthPi),
            other => Err(Error::invalid(format!("unknown sampler '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SamplerSpec {
    pub kind: SamplerKind,
    pub seed: u64,
}

impl SamplerSpec {
    pub fn new(kind: SamplerKind, seed: u64) -> Self {
        SamplerSpec { kind, seed }
    }

    /// Spec for walker `m` of a swarm with master seed `self.seed`.
    pub fn walker(&self, m: u64) -> SamplerSpec {
        SamplerSpec { kind: self.kind, seed: self.seed ^ m }
    }
}

const MAX_BALANCE_PASSES: usize = 10;

/// Draws one phase per edge of `graph`, oriented from the smaller to the
/// larger node index and aligned with [`Graph::edges`].
pub fn sample_phases(graph: &Graph, spec: &SamplerSpec) -> Vec<f64> {
    let mut rng = rng::stream(spec.seed, 0, Purpose::Phases);
    let m = graph.edge_count();
    match spec.kind {
        SamplerKind::UniformFull => (0..m).map(|_| rng.random_range(-PI..=PI)).collect(),
        SamplerKind::EighthPi => (0..m).map(|_| rng.random_range(-FRAC_PI_8..=FRAC_PI_8)).collect(),
        SamplerKind::QuarterPiBalanced => {
            // quarter turns: 0, π/2, π, -π/2
            const DRAW: [i32; 4] = [0, 1, 2, -1];
            let mut quarters: Vec<i32> = (0..m).map(|_| DRAW[rng.random_range(0..4)]).collect();
            balance_quarter_turns(graph, &mut quarters);
            quarters.into_iter().map(|q| q as f64 * FRAC_PI_2).collect()
        }
    }
}

/// Row-imbalance objective `Σ_j |Σ_k φ_jk|` for phases aligned with
/// [`Graph::edges`].
pub fn row_imbalance(graph: &Graph, phases: &[f64]) -> f64 {
    let mut rows = vec![0.0; graph.node_count()];
    for (&(u, v), &p) in graph.edges().iter().zip(phases) {
        rows[u] += p;
        rows[v] -= p;
    }
    rows.iter().map(|r| r.abs()).sum()
}

/// Greedy local search over quarter-turn phases.
///
/// Each pass visits every edge `e` and applies its best strictly-improving
/// move: flipping the orientation of `e`, or exchanging values with an edge
/// `f` of a different magnitude (each side in either orientation). Moves are
/// ranked by `(objective change, partner index, sign of e, sign of f)` with a
/// flip counting as partner `e`. Stops after a pass without improvement or
/// after [`MAX_BALANCE_PASSES`] passes. All arithmetic is on integer quarter
/// turns, so the objective is exact.
///
/// For partners disjoint from `e` the change splits into a term for `e` and a
/// term for `f`; the best such partner per magnitude class is kept in ordered
/// sets that are refreshed whenever a move touches an incident row.
fn balance_quarter_turns(graph: &Graph, quarters: &mut [i32]) {
    let edges = graph.edges();
    if edges.is_empty() {
        return;
    }
    let mut state = Balancer::new(graph, quarters);
    for _ in 0..MAX_BALANCE_PASSES {
        let mut improved = false;
        for e in 0..edges.len() {
            if let Some(mv) = state.best_move(e) {
                state.apply(e, mv);
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    quarters.copy_from_slice(&state.quarters);
}

/// A candidate move for edge `e`: `partner == e` means a flip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Move {
    delta: i64,
    partner: usize,
    sign_e: u8,
    sign_f: u8,
    new_e: i32,
    new_f: i32,
}

const SIGNS: [i32; 2] = [1, -1];

struct Balancer<'g> {
    edges: &'g [(usize, usize)],
    incident: Vec<Vec<usize>>,
    quarters: Vec<i32>,
    rows: Vec<i64>,
    /// `partners[c][m]`: edges of magnitude `c` keyed by their best change
    /// when re-valued to magnitude `m`.
    partners: [[std::collections::BTreeSet<(i64, usize)>; 3]; 3],
    keys: Vec<[i64; 3]>,
}

impl<'g> Balancer<'g> {
    fn new(graph: &'g Graph, quarters: &[i32]) -> Self {
        let edges = graph.edges();
        let mut incident = vec![Vec::new(); graph.node_count()];
        let mut rows = vec![0i64; graph.node_count()];
        for (i, (&(u, v), &q)) in edges.iter().zip(quarters).enumerate() {
            incident[u].push(i);
            incident[v].push(i);
            rows[u] += q as i64;
            rows[v] -= q as i64;
        }
        let mut state = Balancer {
            edges,
            incident,
            quarters: quarters.to_vec(),
            rows,
            partners: Default::default(),
            keys: vec![[0; 3]; edges.len()],
        };
        for f in 0..edges.len() {
            state.insert_keys(f);
        }
        state
    }

    fn single_delta(&self, f: usize, new: i32) -> i64 {
        change_delta(&self.rows, &[(self.edges[f], self.quarters[f], new)])
    }

    /// Best change (and sign index) for re-valuing `f` to `±magnitude`.
    fn best_single(&self, f: usize, magnitude: i32) -> (i64, u8) {
        let mut best = (i64::MAX, 0u8);
        for (si, s) in SIGNS.iter().enumerate() {
            let d = self.single_delta(f, s * magnitude);
            if d < best.0 {
                best = (d, si as u8);
            }
        }
        best
    }

    fn insert_keys(&mut self, f: usize) {
        let c = self.quarters[f].unsigned_abs() as usize;
        for m in 0..3 {
            if m == c {
                continue;
            }
            let (d, _) = self.best_single(f, m as i32);
            self.keys[f][m] = d;
            self.partners[c][m].insert((d, f));
        }
    }

    fn remove_keys(&mut self, f: usize) {
        let c = self.quarters[f].unsigned_abs() as usize;
        for m in 0..3 {
            if m != c {
                self.partners[c][m].remove(&(self.keys[f][m], f));
            }
        }
    }

    fn shares_node(&self, e: usize, f: usize) -> bool {
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        a == c || a == d || b == c || b == d
    }

    fn best_move(&self, e: usize) -> Option<Move> {
        let q = self.quarters[e];
        let qm = q.unsigned_abs() as usize;
        let mut best: Option<Move> = None;
        let mut offer = |mv: Move| {
            if mv.delta < 0 && best.is_none_or(|b| mv < b) {
                best = Some(mv);
            }
        };

        if q != 0 {
            offer(Move { delta: self.single_delta(e, -q), partner: e, sign_e: 1, sign_f: 1, new_e: -q, new_f: -q });
        }

        let (u, v) = self.edges[e];
        for c in 0..3usize {
            if c == qm {
                continue;
            }
            let (de, se) = self.best_single(e, c as i32);
            if let Some(&(df, f)) = self.partners[c][qm].iter().find(|&&(_, f)| !self.shares_node(e, f)) {
                let (_, sf) = self.best_single(f, q.abs());
                offer(Move {
                    delta: de + df,
                    partner: f,
                    sign_e: se,
                    sign_f: sf,
                    new_e: SIGNS[se as usize] * c as i32,
                    new_f: SIGNS[sf as usize] * q.abs(),
                });
            }
        }

        for &f in self.incident[u].iter().chain(&self.incident[v]) {
            let p = self.quarters[f];
            if f == e || p.abs() == q.abs() {
                continue;
            }
            for (si, se) in SIGNS.iter().enumerate() {
                for (sj, sf) in SIGNS.iter().enumerate() {
                    let (new_e, new_f) = (se * p.abs(), sf * q.abs());
                    let delta = change_delta(&self.rows, &[(self.edges[e], q, new_e), (self.edges[f], p, new_f)]);
                    offer(Move { delta, partner: f, sign_e: si as u8, sign_f: sj as u8, new_e, new_f });
                }
            }
        }
        best
    }

    fn apply(&mut self, e: usize, mv: Move) {
        let mut moved = vec![(e, mv.new_e)];
        if mv.partner != e {
            moved.push((mv.partner, mv.new_f));
        }
        let mut touched: Vec<usize> = Vec::new();
        for &(f, _) in &moved {
            let (a, b) = self.edges[f];
            touched.extend(&self.incident[a]);
            touched.extend(&self.incident[b]);
        }
        touched.sort_unstable();
        touched.dedup();
        for &f in &touched {
            self.remove_keys(f);
        }
        for &(f, new) in &moved {
            apply(&mut self.rows, self.edges[f], self.quarters[f], new);
            self.quarters[f] = new;
        }
        for &f in &touched {
            self.insert_keys(f);
        }
    }
}

fn apply(rows: &mut [i64], (u, v): (usize, usize), old: i32, new: i32) {
    let d = (new - old) as i64;
    rows[u] += d;
    rows[v] -= d;
}

/// Objective change from re-valuing a few edges at once.
fn change_delta(rows: &[i64], changes: &[((usize, usize), i32, i32)]) -> i64 {
    let mut touched: [(usize, i64); 4] = [(usize::MAX, 0); 4];
    let mut len = 0;
    for &((u, v), old, new) in changes {
        let d = (new - old) as i64;
        for (node, dd) in [(u, d), (v, -d)] {
            match touched[..len].iter_mut().find(|slot| slot.0 == node) {
                Some(slot) => slot.1 += dd,
                None => {
                    touched[len] = (node, dd);
                    len += 1;
                }
            }
        }
    }
    touched[..len].iter().map(|&(node, d)| (rows[node] + d).abs() - rows[node].abs()).sum()
}
