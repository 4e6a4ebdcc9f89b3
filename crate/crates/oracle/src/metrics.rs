/// AuROC as the area under the tie-blocked ROC polyline (trapezoids).
pub fn auroc_trapezoid(scores: &[f64], labels: &[bool]) -> f64 {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| scores[b].partial_cmp(&scores[a]).unwrap());
    let p = labels.iter().filter(|&&l| l).count() as f64;
    let n = labels.len() as f64 - p;
    let (mut tp, mut fp) = (0.0, 0.0);
    let (mut x0, mut y0) = (0.0, 0.0);
    let mut area = 0.0;
    let mut i = 0;
    while i < idx.len() {
        let s = scores[idx[i]];
        while i < idx.len() && scores[idx[i]] == s {
            if labels[idx[i]] {
                tp += 1.0;
            } else {
                fp += 1.0;
            }
            i += 1;
        }
        let (x1, y1) = (fp / n, tp / p);
        area += (x1 - x0) * (y0 + y1) / 2.0;
        x0 = x1;
        y0 = y1;
    }
    area
}

/// Fraction of positive/negative pairs ordered correctly, ties counting
/// one half.
pub fn auroc_pairs(scores: &[f64], labels: &[bool]) -> f64 {
    let mut wins = 0.0;
    let mut total = 0.0;
    for (i, &li) in labels.iter().enumerate() {
        if !li {
            continue;
        }
        for (j, &lj) in labels.iter().enumerate() {
            if lj {
                continue;
            }
            total += 1.0;
            if scores[i] > scores[j] {
                wins += 1.0;
            } else if scores[i] == scores[j] {
                wins += 0.5;
            }
        }
    }
    wins / total
}

/// Σ over distinct thresholds of (recall gain)·(precision at threshold).
pub fn aupr_thresholds(scores: &[f64], labels: &[bool]) -> f64 {
    let mut thresholds: Vec<f64> = scores.to_vec();
    thresholds.sort_by(|a, b| b.partial_cmp(a).unwrap());
    thresholds.dedup();
    let p = labels.iter().filter(|&&l| l).count() as f64;
    let mut prev_recall = 0.0;
    let mut area = 0.0;
    for th in thresholds {
        let tp = scores.iter().zip(labels).filter(|(&s, &l)| s >= th && l).count() as f64;
        let sel = scores.iter().filter(|&&s| s >= th).count() as f64;
        let recall = tp / p;
        area += (recall - prev_recall) * tp / sel;
        prev_recall = recall;
    }
    area
}

/// `(1/r_k) Σ_{i≤k} (r_i/i)·rel(i)` written out term by term.
pub fn ap_at_k(relevance: &[bool], k: usize) -> Option<f64> {
    let r_k = relevance[..k].iter().filter(|&&r| r).count();
    if r_k == 0 {
        return None;
    }
    let mut s = 0.0;
    for i in 1..=k {
        if relevance[i - 1] {
            let r_i = relevance[..i].iter().filter(|&&r| r).count();
            s += r_i as f64 / i as f64;
        }
    }
    Some(s / r_k as f64)
}
