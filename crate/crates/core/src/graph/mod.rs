//! Undirected simple graphs with string node labels.
//!
//! A [`Graph`] stores each undirected edge once as `(u, v)` with `u < v`, keeps
//! sorted adjacency lists, and remembers self-loop lines seen at parse time so
//! that [`canonicalize`] can drop them explicitly.

mod io;
mod stats;

use std::collections::{HashMap, VecDeque};

use ndarray::Array2;

use crate::error::{Error, Result};

pub use io::{parse_edge_list, write_edge_list, Delimiter, ParseOptions};
pub use stats::{compute_stats, normalize_stats, GraphStats, NormalizedStats};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    self_loops: Vec<usize>,
    /// Number of non-edge pairs `(j, k)`, `j < k`, in rows before each row.
    non_edge_offsets: Vec<usize>,
}

impl Graph {
    /// Builds a graph on `n` nodes labelled `"0".."n-1"`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::with_labels(labels, edges)
    }

    /// Builds a graph from explicit labels and index pairs. Duplicate pairs and
    /// both orientations collapse to one edge; `(j, j)` pairs are recorded as
    /// self-loops and kept out of the edge set.
    pub fn with_labels(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut adjacency = vec![Vec::new(); n];
        let mut self_loops = Vec::new();
        let mut canonical = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::invalid(format!("edge ({a}, {b}) references a node outside 0..{n}")));
            }
            if a == b {
                self_loops.push(a);
            } else {
                canonical.push((a.min(b), a.max(b)));
            }
        }
        canonical.sort_unstable();
        canonical.dedup();
        self_loops.sort_unstable();
        self_loops.dedup();
        for &(u, v) in &canonical {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let mut non_edge_offsets = Vec::with_capacity(n);
        let mut acc = 0;
        for (j, list) in adjacency.iter().enumerate() {
            non_edge_offsets.push(acc);
            let later = list.len() - list.partition_point(|&v| v < j);
            acc += n - j - 1 - later;
        }
        Ok(Graph { labels, adjacency, edges: canonical, self_loops, non_edge_offsets })
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn self_loops(&self) -> &[usize] {
        &self.self_loops
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Position of an edge in [`Graph::edges`].
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.binary_search(&(a.min(b), a.max(b))).ok()
    }

    pub fn label_index(&self) -> HashMap<&str, usize> {
        self.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect()
    }

    /// Number of unordered node pairs that are not edges.
    pub fn non_edge_count(&self) -> usize {
        let n = self.node_count();
        n * n.saturating_sub(1) / 2 - self.edge_count()
    }

    /// Non-adjacent pairs `(j, k)`, `j < k`, in row-major upper-triangular order.
    pub fn non_edges(&self) -> NonEdges<'_> {
        NonEdges { graph: self, row: 0, col: 1, cursor: 0 }
    }

    /// Position of the non-edge `(j, k)` in [`Graph::non_edges`] order, or
    /// `None` for edges and the diagonal.
    pub fn non_edge_position(&self, j: usize, k: usize) -> Option<usize> {
        let (j, k) = (j.min(k), j.max(k));
        if j == k {
            return None;
        }
        let adj = &self.adjacency[j];
        let below = adj.partition_point(|&v| v <= j);
        let before_k = adj.partition_point(|&v| v < k);
        if before_k < adj.len() && adj[before_k] == k {
            return None;
        }
        Some(self.non_edge_offsets[j] + (k - j - 1) - (before_k - below))
    }

    pub fn adjacency_matrix(&self) -> Array2<f64> {
        let n = self.node_count();
        let mut a = Array2::zeros((n, n));
        for &(u, v) in &self.edges {
            a[[u, v]] = 1.0;
            a[[v, u]] = 1.0;
        }
        a
    }

    /// Copy of this graph on the same node set with the given edges removed.
    /// Pairs that are not edges are ignored.
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> Graph {
        let mut drop: Vec<(usize, usize)> = removed.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        drop.sort_unstable();
        let kept: Vec<(usize, usize)> = self.edges.iter().copied().filter(|e| drop.binary_search(e).is_err()).collect();
        Graph::with_labels(self.labels.clone(), &kept).expect("indices already validated")
    }

    /// Connected components as sorted node lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut members = Vec::new();
            while let Some(u) = queue.pop_front() {
                members.push(u);
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Induced subgraph on `nodes` (sorted ascending); indices are reassigned
    /// in that order.
    pub fn induced(&self, nodes: &[usize]) -> Graph {
        let mut remap = vec![usize::MAX; self.node_count()];
        for (new, &old) in nodes.iter().enumerate() {
            remap[old] = new;
        }
        let labels = nodes.iter().map(|&i| self.labels[i].clone()).collect();
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| remap[u] != usize::MAX && remap[v] != usize::MAX)
            .map(|&(u, v)| (remap[u], remap[v]))
            .collect();
        let mut g = Graph::with_labels(labels, &edges).expect("remapped indices are in range");
        g.self_loops = self.self_loops.iter().filter(|&&j| remap[j] != usize::MAX).map(|&j| remap[j]).collect();
        g
    }
}

/// Drops self-loops, then keeps the largest connected component. Ties go to
/// the component holding the smallest node index. Surviving nodes keep their
/// relative order.
pub fn canonicalize(graph: &Graph) -> Graph {
    let mut best: Option<Vec<usize>> = None;
    for comp in graph.components() {
        // components arrive ordered by smallest member, so strict `>` keeps the
        // earliest on ties
        if best.as_ref().is_none_or(|b| comp.len() > b.len()) {
            best = Some(comp);
        }
    }
    let mut g = graph.induced(&best.unwrap_or_default());
    g.self_loops.clear();
    g
}

pub struct NonEdges<'g> {
    graph: &'g Graph,
    row: usize,
    col: usize,
    cursor: usize,
}

impl Iterator for NonEdges<'_> {
    type Item = (usize, usize);

    fn next(&mut self) -> Option<(usize, usize)> {
        let n = self.graph.node_count();
        loop {
            if self.row + 1 >= n {
                return None;
            }
            if self.col >= n {
                self.row += 1;
                self.col = self.row + 1;
                let adj = &self.graph.adjacency[self.row.min(n - 1)];
                self.cursor = adj.partition_point(|&v| v < self.col);
                continue;
            }
            let adj = &self.graph.adjacency[self.row];
            while self.cursor < adj.len() && adj[self.cursor] < self.col {
                self.cursor += 1;
            }
            let k = self.col;
            self.col += 1;
            if self.cursor < adj.len() && adj[self.cursor] == k {
                self.cursor += 1;
                continue;
            }
            return Some((self.row, k));
        }
    }
}
