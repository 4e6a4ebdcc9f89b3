use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub num_nodes: usize,
    pub num_edges: usize,
    pub mean_degree: f64,
    pub density: f64,
    pub mean_clustering: f64,
}

/// [`GraphStats`] with every field divided by its maximum over a set of graphs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizedStats {
    pub num_nodes: f64,
    pub num_edges: f64,
    pub mean_degree: f64,
    pub density: f64,
    pub mean_clustering: f64,
}

impl NormalizedStats {
    fn fields(s: &GraphStats) -> [f64; 5] {
        [s.num_nodes as f64, s.num_edges as f64, s.mean_degree, s.density, s.mean_clustering]
    }
}

pub fn compute_stats(graph: &Graph) -> GraphStats {
    let n = graph.node_count();
    let m = graph.edge_count();
    let mean_degree = if n == 0 { 0.0 } else { 2.0 * m as f64 / n as f64 };
    let density = if n < 2 { 0.0 } else { 2.0 * m as f64 / (n as f64 * (n as f64 - 1.0)) };

    let triangles = triangles_per_node(graph);
    let mut clustering_sum = 0.0;
    for (j, &tri) in triangles.iter().enumerate() {
        let d = graph.degree(j);
        if d >= 2 {
            clustering_sum += 2.0 * tri as f64 / (d as f64 * (d as f64 - 1.0));
        }
    }
    let mean_clustering = if n == 0 { 0.0 } else { clustering_sum / n as f64 };

    GraphStats { num_nodes: n, num_edges: m, mean_degree, density, mean_clustering }
}

/// Triangle count through each node, by sorted-list intersection over edges.
pub(crate) fn triangles_per_node(graph: &Graph) -> Vec<usize> {
    let mut tri = vec![0usize; graph.node_count()];
    for &(u, v) in graph.edges() {
        let (a, b) = (graph.neighbors(u), graph.neighbors(v));
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let w = a[i];
                    // count each triangle once, from its lowest-index edge (u, v) with w > v
                    if w > v {
                        tri[u] += 1;
                        tri[v] += 1;
                        tri[w] += 1;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    tri
}

pub fn normalize_stats(stats: &[GraphStats]) -> Result<Vec<NormalizedStats>> {
    if stats.is_empty() {
        return Err(Error::invalid("cannot normalize an empty list of statistics"));
    }
    let mut max = [f64::NEG_INFINITY; 5];
    for s in stats {
        for (m, v) in max.iter_mut().zip(NormalizedStats::fields(s)) {
            *m = m.max(v);
        }
    }
    const NAMES: [&str; 5] = ["num_nodes", "num_edges", "mean_degree", "density", "mean_clustering"];
    for (m, name) in max.iter().zip(NAMES) {
        if *m <= 0.0 {
            return Err(Error::invalid(format!("maximum of {name} is not positive")));
        }
    }
    Ok(stats
        .iter()
        .map(|s| {
            let f = NormalizedStats::fields(s);
            NormalizedStats {
                num_nodes: f[0] / max[0],
                num_edges: f[1] / max[1],
                mean_degree: f[2] / max[2],
                density: f[3] / max[3],
                mean_clustering: f[4] / max[4],
            }
        })
        .collect())
}
