use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{self, Purpose};

/// Repeated k-fold edge removal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FoldPlan {
    pub removal_fraction: f64,
    pub k_folds: usize,
    pub repeats: usize,
    pub master_seed: u64,
}

impl FoldPlan {
    /// Standard plans giving ten trials: 10% → 1×10 folds, 20% → 2×5,
    /// 50% → 5×2.
    pub fn new(removal_fraction: f64, master_seed: u64) -> Result<Self> {
        let (k_folds, repeats) = match removal_fraction {
            f if (f - 0.10).abs() < 1e-12 => (10, 1),
            f if (f - 0.20).abs() < 1e-12 => (5, 2),
            f if (f - 0.50).abs() < 1e-12 => (2, 5),
            f => return Err(Error::invalid(format!("removal fraction must be 0.1, 0.2 or 0.5, got {f}"))),
        };
        Ok(FoldPlan { removal_fraction, k_folds, repeats, master_seed })
    }

    pub fn with_repeats(mut self, repeats: usize) -> Self {
        self.repeats = repeats;
        self
    }

    pub fn trial_count(&self) -> usize {
        self.k_folds * self.repeats
    }
}

/// One train/test split: `observed` keeps every node of the original graph
/// and all edges except `positives`.
#[derive(Debug, Clone)]
pub struct Trial {
    pub repeat: usize,
    pub fold: usize,
    pub observed: Graph,
    /// Removed edges, `(u, v)` with `u < v`, sorted.
    pub positives: Vec<(usize, usize)>,
}

impl Trial {
    /// Membership of each observed non-edge in the positive set, in
    /// [`Graph::non_edges`] order.
    pub fn labels(&self) -> Vec<bool> {
        let mut labels = vec![false; self.observed.non_edge_count()];
        for &(u, v) in &self.positives {
            let p = self.observed.non_edge_position(u, v).expect("removed edges are observed non-edges");
            labels[p] = true;
        }
        labels
    }

    pub fn negative_count(&self) -> usize {
        self.observed.non_edge_count() - self.positives.len()
    }
}

/// Each repeat shuffles the sorted edge list and cuts it into `k` contiguous
/// folds; the first `|E| mod k` folds take one extra edge.
pub fn make_folds(graph: &Graph, plan: &FoldPlan) -> Result<Vec<Trial>> {
    let k = plan.k_folds;
    if k == 0 || plan.repeats == 0 {
        return Err(Error::invalid("fold plan needs at least one fold and one repeat"));
    }
    if graph.edge_count() < k {
        return Err(Error::invalid(format!("{} edges cannot fill {k} folds", graph.edge_count())));
    }
    let mut trials = Vec::with_capacity(plan.trial_count());
    for repeat in 0..plan.repeats {
        let mut edges = graph.edges().to_vec();
        edges.shuffle(&mut rng::stream(plan.master_seed, repeat as u64, Purpose::Folds));
        let base = edges.len() / k;
        let extra = edges.len() % k;
        let mut start = 0;
        for fold in 0..k {
            let len = base + usize::from(fold < extra);
            let mut positives = edges[start..start + len].to_vec();
            positives.sort_unstable();
            start += len;
            let observed = graph.without_edges(&positives);
            trials.push(Trial { repeat, fold, observed, positives });
        }
    }
    Ok(trials)
}
