use rand::seq::SliceRandom;
use rand::Rng;

use crate::Edges;

/// G(n, p) edge list, `(u, v)` with `u < v`.
pub fn erdos_renyi<R: Rng>(n: usize, p: f64, rng: &mut R) -> Edges {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                e.push((u, v));
            }
        }
    }
    e
}

/// Uniform random recursive tree with randomly permuted node ids.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Edges {
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    let mut e: Edges = (1..n)
        .map(|i| {
            let j = rng.random_range(0..i);
            let (a, b) = (ids[i], ids[j]);
            (a.min(b), a.max(b))
        })
        .collect();
    e.sort_unstable();
    e
}

/// Random tree plus about `extra` additional random edges; always connected.
pub fn random_connected<R: Rng>(n: usize, extra: usize, rng: &mut R) -> Edges {
    let mut e = random_tree(n, rng);
    if n < 3 {
        return e;
    }
    for _ in 0..extra {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v {
            e.push((u.min(v), u.max(v)));
        }
    }
    e.sort_unstable();
    e.dedup();
    e
}

/// Holme–Kim growth: each new node attaches `m` edges, where `m` is 2 with
/// probability `p_two` and 1 otherwise. The first edge goes to a
/// degree-proportional target; each further edge closes a triangle through a
/// neighbour of the previous target with probability `p_triad`, otherwise it
/// is degree-proportional too. Starts from a triangle.
pub fn powerlaw_cluster<R: Rng>(n: usize, p_two: f64, p_triad: f64, rng: &mut R) -> Edges {
    assert!(n >= 3);
    let mut adj: Vec<Vec<usize>> = vec![vec![1, 2], vec![0, 2], vec![0, 1]];
    let mut ends: Vec<usize> = vec![0, 1, 0, 2, 1, 2];
    let mut edges: Edges = vec![(0, 1), (0, 2), (1, 2)];
    for v in 3..n {
        let m = if rng.random_bool(p_two) { 2 } else { 1 };
        let mut targets: Vec<usize> = Vec::with_capacity(m);
        let mut last = ends[rng.random_range(0..ends.len())];
        targets.push(last);
        while targets.len() < m {
            let mut pick = None;
            if rng.random_bool(p_triad) {
                let cands: Vec<usize> = adj[last].iter().copied().filter(|w| !targets.contains(w)).collect();
                if !cands.is_empty() {
                    pick = Some(cands[rng.random_range(0..cands.len())]);
                }
            }
            let w = match pick {
                Some(w) => w,
                None => loop {
                    let w = ends[rng.random_range(0..ends.len())];
                    if !targets.contains(&w) {
                        break w;
                    }
                },
            };
            targets.push(w);
            last = w;
        }
        adj.push(Vec::new());
        for &w in &targets {
            adj[v].push(w);
            adj[w].push(v);
            ends.push(v);
            ends.push(w);
            edges.push((w.min(v), w.max(v)));
        }
    }
    edges.sort_unstable();
    edges
}

/// Mean local clustering by direct triple enumeration; nodes of degree < 2
/// contribute 0.
pub fn mean_clustering(n: usize, edges: &[(usize, usize)]) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let a = crate::scores::adjacency(n, edges);
    let mut total = 0.0;
    for j in 0..n {
        let nb: Vec<usize> = (0..n).filter(|&u| a[j][u]).collect();
        let d = nb.len();
        if d < 2 {
            continue;
        }
        let mut closed = 0usize;
        for x in 0..d {
            for y in x + 1..d {
                if a[nb[x]][nb[y]] {
                    closed += 1;
                }
            }
        }
        total += 2.0 * closed as f64 / (d * (d - 1)) as f64;
    }
    total / n as f64
}

/// Mean local clustering in O(Σ d²) for large graphs.
pub fn mean_clustering_sparse(n: usize, edges: &[(usize, usize)]) -> f64 {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut mark = vec![false; n];
    let mut total = 0.0;
    for j in 0..n {
        let d = adj[j].len();
        if d < 2 {
            continue;
        }
        for &u in &adj[j] {
            mark[u] = true;
        }
        let mut twice = 0usize;
        for &u in &adj[j] {
            twice += adj[u].iter().filter(|&&w| mark[w]).count();
        }
        for &u in &adj[j] {
            mark[u] = false;
        }
        total += twice as f64 / (d * (d - 1)) as f64;
    }
    total / n as f64
}
