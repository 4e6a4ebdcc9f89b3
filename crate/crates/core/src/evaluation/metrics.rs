use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Maximum number of points kept per exported curve.
pub const MAX_CURVE_POINTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Curves {
    /// `(fpr, tpr)` at every tie-block boundary, starting at `(0, 0)`.
    pub roc: Vec<(f64, f64)>,
    /// `(recall, precision)` at every tie-block boundary.
    pub pr: Vec<(f64, f64)>,
    /// `(rank, tp)`: true positives among the first `rank` pairs of the
    /// ranking, ties in pair order.
    pub tp_at_rank: Vec<(usize, usize)>,
}

impl Curves {
    /// Keeps at most `max_points` per curve, evenly spaced by index and always
    /// including both ends.
    pub fn downsampled(&self, max_points: usize) -> Curves {
        Curves {
            roc: thin(&self.roc, max_points),
            pr: thin(&self.pr, max_points),
            tp_at_rank: thin(&self.tp_at_rank, max_points),
        }
    }
}

fn thin<T: Copy>(points: &[T], max_points: usize) -> Vec<T> {
    if points.len() <= max_points || max_points < 2 {
        return points.to_vec();
    }
    let last = points.len() - 1;
    let steps = max_points - 1;
    // indices i*last/steps are strictly increasing since last > steps
    (0..=steps).map(|i| points[i * last / steps]).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingMetrics {
    pub positives: usize,
    pub negatives: usize,
    pub auroc: f64,
    pub aupr: f64,
    pub curves: Curves,
}

/// Descending order of `scores`, ties kept in index order.
pub fn descending_order(scores: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    order
}

/// Threshold-sweep metrics of `scores` against binary `relevant` labels.
///
/// AuROC is the midrank Mann–Whitney statistic
/// `(Σ ranks of positives − P(P+1)/2) / (P·N)`, evaluated in exact integer
/// arithmetic on doubled ranks. AuPR is the step sum of precision over recall
/// where a block of tied scores counts as one step at its block-end precision.
/// Curves are returned at full resolution.
pub fn ranking_metrics(scores: &[f64], relevant: &[bool]) -> Result<RankingMetrics> {
    if scores.len() != relevant.len() {
        return Err(Error::DimensionMismatch { expected: scores.len(), actual: relevant.len() });
    }
    if let Some(bad) = scores.iter().find(|s| s.is_nan()) {
        return Err(Error::invalid(format!("score {bad} cannot be ranked")));
    }
    let total = scores.len();
    let p = relevant.iter().filter(|&&r| r).count();
    let n = total - p;
    if p == 0 {
        return Err(Error::EmptyClass("positives"));
    }
    if n == 0 {
        return Err(Error::EmptyClass("negatives"));
    }
    let order = descending_order(scores);

    let mut twice_rank_sum: u128 = 0;
    let mut aupr = 0.0;
    let mut tp = 0usize;
    let mut fp = 0usize;
    let mut roc = vec![(0.0, 0.0)];
    let mut pr = Vec::new();
    let mut tp_at_rank = Vec::with_capacity(total + 1);
    tp_at_rank.push((0, 0));

    let mut start = 0;
    while start < total {
        let s = scores[order[start]];
        let mut end = start;
        let mut block_pos = 0usize;
        while end < total && scores[order[end]] == s {
            if relevant[order[end]] {
                block_pos += 1;
            }
            end += 1;
        }
        let m = end - start;
        // ascending ranks of this block are total-end+1 ..= total-start
        let twice_mid = (2 * total - 2 * start - m + 1) as u128;
        twice_rank_sum += block_pos as u128 * twice_mid;

        for &idx in &order[start..end] {
            if relevant[idx] {
                tp += 1;
            } else {
                fp += 1;
            }
            tp_at_rank.push((tp + fp, tp));
        }
        let precision = tp as f64 / (tp + fp) as f64;
        aupr += block_pos as f64 / p as f64 * precision;
        roc.push((fp as f64 / n as f64, tp as f64 / p as f64));
        pr.push((tp as f64 / p as f64, precision));
        start = end;
    }

    let numerator = twice_rank_sum - (p as u128) * (p as u128 + 1);
    let auroc = numerator as f64 / (2 * p as u128 * n as u128) as f64;
    Ok(RankingMetrics { positives: p, negatives: n, auroc, aupr, curves: Curves { roc, pr, tp_at_rank } })
}

/// `AP@k = (1/r_k) Σ_{i≤k} (r_i / i)·rel(i)`. `None` when no relevant pair
/// appears in the top `k` ("no links found").
pub fn average_precision_at_k(
    ranking: &[(usize, usize)],
    relevant: &HashSet<(usize, usize)>,
    k: usize,
) -> Result<Option<f64>> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if ranking.len() < k {
        return Err(Error::invalid(format!("ranking has {} pairs, fewer than k = {k}", ranking.len())));
    }
    let rel: Vec<bool> = ranking[..k].iter().map(|&(a, b)| relevant.contains(&(a.min(b), a.max(b)))).collect();
    Ok(average_precision_of_relevance(&rel))
}

/// AP over a 0/1 relevance pattern, `None` if nothing is relevant.
pub fn average_precision_of_relevance(rel: &[bool]) -> Option<f64> {
    let mut hits = 0usize;
    let mut sum = 0.0;
    for (i, &r) in rel.iter().enumerate() {
        if r {
            hits += 1;
            sum += hits as f64 / (i + 1) as f64;
        }
    }
    (hits > 0).then(|| sum / hits as f64)
}
