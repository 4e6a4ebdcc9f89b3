use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::crossval::{score_tables, MethodSpec};
use super::metrics::average_precision_at_k;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VersionReport {
    pub method: String,
    pub time: f64,
    pub k: usize,
    /// `None` when no relevant pair reached the top `k`.
    pub ap_at_k: Option<f64>,
    /// Relevant pairs in the top `k`.
    pub hits: usize,
    /// New links between nodes present in the old version.
    pub relevant: usize,
    pub shared_nodes: usize,
    /// Top `k` as `(label, label, score)`.
    pub top: Vec<(String, String, f64)>,
}

/// Pairs of `old` (as `(u, v)`, `u < v`) that are non-edges there and edges
/// in `new`, matching nodes by label. Also returns the shared node count.
pub fn new_links(old: &Graph, new: &Graph) -> Result<(HashSet<(usize, usize)>, usize)> {
    let index = old.label_index();
    let map: Vec<Option<usize>> = new.labels().iter().map(|l| index.get(l.as_str()).copied()).collect();
    let shared = map.iter().filter(|m| m.is_some()).count();
    if shared == 0 {
        return Err(Error::NoLabelOverlap);
    }
    let relevant = new
        .edges()
        .iter()
        .filter_map(|&(a, b)| match (map[a], map[b]) {
            (Some(u), Some(v)) if !old.has_edge(u, v) && u != v => Some((u.min(v), u.max(v))),
            _ => None,
        })
        .collect();
    Ok((relevant, shared))
}

/// AP@k of `method`'s ranking on `old` against the links that appear in
/// `new`. The ranking is cut at `k` or at the number of non-edges, whichever
/// is smaller.
pub fn compare_versions(old: &Graph, new: &Graph, method: &MethodSpec, t: f64, k: usize) -> Result<VersionReport> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let (relevant, shared_nodes) = new_links(old, new)?;
    let table = score_tables(old, method, &[t])?.pop().expect("one time");
    let top = table.top_k(k);
    let ranking: Vec<(usize, usize)> = top.iter().map(|&(p, _)| p).collect();
    let cut = k.min(ranking.len());
    let ap_at_k = if cut == 0 { None } else { average_precision_at_k(&ranking, &relevant, cut)? };
    let hits = ranking.iter().filter(|p| relevant.contains(p)).count();
    Ok(VersionReport {
        method: method.method_id(),
        time: t,
        k,
        ap_at_k,
        hits,
        relevant: relevant.len(),
        shared_nodes,
        top: top.iter().map(|&((u, v), s)| (old.label(u).to_string(), old.label(v).to_string(), s)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::{BaselineKind, BaselineSpec};

    fn labelled(labels: &[&str], edges: &[(usize, usize)]) -> Graph {
        Graph::with_labels(labels.iter().map(|s| s.to_string()).collect(), edges).unwrap()
    }

    #[test]
    fn identical_versions_find_nothing() {
        let g = labelled(&["a", "b", "c", "d"], &[(0, 1), (1, 2), (2, 3)]);
        let r = compare_versions(&g, &g, &MethodSpec::NonChiral, 1.0, 2).unwrap();
        assert_eq!(r.ap_at_k, None);
        assert_eq!(r.relevant, 0);
    }

    #[test]
    fn predicted_new_link_scores_one() {
        let old = labelled(&["a", "b", "c", "d"], &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        // the new version lists nodes in another order and adds a–d
        let new = labelled(&["c", "b", "a", "d", "e"], &[(2, 1), (2, 0), (1, 3), (0, 3), (2, 3), (3, 4)]);
        let cn = MethodSpec::Baseline(BaselineSpec::new(BaselineKind::Cn));
        let r = compare_versions(&old, &new, &cn, 0.0, 1).unwrap();
        assert_eq!(r.relevant, 1);
        assert_eq!(r.ap_at_k, Some(1.0));
        assert_eq!(r.top[0].0, "a");
        assert_eq!(r.top[0].1, "d");
    }

    #[test]
    fn disjoint_labels_rejected() {
        let a = labelled(&["a", "b"], &[(0, 1)]);
        let b = labelled(&["x", "y"], &[(0, 1)]);
        assert!(matches!(compare_versions(&a, &b, &MethodSpec::NonChiral, 1.0, 1), Err(Error::NoLabelOverlap)));
    }
}
