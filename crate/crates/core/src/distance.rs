//! Quantum–classical and walker–walker distances of evolved walkers.
//!
//! `D_QC^j(t) = 1 − Σ_k P^RW_jk(t) P^QW_jk(t)` compares a quantum walker with
//! the Laplacian random walk from the same start; `D_lm^j(t) =
//! 1 − |⟨j|U_l(t)† U_m(t)|j⟩|²` compares two quantum walkers. Global values are
//! the maximum over start nodes.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use ndarray::{Array2, Axis, Zip};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::walk::{build_generator, diagonalize, sample_phases, ClassicalPropagator, Propagator, SamplerSpec};

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("evolution time must be finite and non-negative, got {t}")))
    }
}

/// `D_QC^j(t)` for every start node `j`.
pub fn qc_distance_profile(quantum: &Propagator, classical: &ClassicalPropagator, t: f64) -> Result<Vec<f64>> {
    if quantum.dim() != classical.dim() {
        return Err(Error::DimensionMismatch { expected: classical.dim(), actual: quantum.dim() });
    }
    check_time(t)?;
    let pq = quantum.transition_matrix(t);
    let pc = classical.transition_matrix(t);
    Ok(pq.axis_iter(Axis(0)).zip(pc.axis_iter(Axis(0))).map(|(q, c)| 1.0 - q.dot(&c)).collect())
}

/// `D_QC^j(t)` for a single start node.
pub fn quantum_classical_distance(quantum: &Propagator, graph: &Graph, t: f64, j: usize) -> Result<f64> {
    if j >= graph.node_count() {
        return Err(Error::invalid(format!("node {j} outside 0..{}", graph.node_count())));
    }
    let classical = ClassicalPropagator::new(graph)?;
    Ok(qc_distance_profile(quantum, &classical, t)?[j])
}

/// Exact maximum of a per-node quantity over all `n` start nodes.
pub fn global_max_over_sources(n: usize, per_node: impl Fn(usize) -> f64) -> Result<f64> {
    (0..n).map(per_node).reduce(f64::max).ok_or_else(|| Error::invalid("no start nodes to maximize over"))
}

/// `1 − |u_lᵀ* u_m|²` for each column pair of two unitaries.
fn overlap_distances(ul: &Array2<Complex64>, um: &Array2<Complex64>) -> Vec<f64> {
    let mut amp = vec![Complex64::new(0.0, 0.0); ul.ncols()];
    for (rl, rm) in ul.axis_iter(Axis(0)).zip(um.axis_iter(Axis(0))) {
        Zip::from(&mut amp[..]).and(&rl).and(&rm).for_each(|a, &x, &y| *a += x.conj() * y);
    }
    amp.into_iter().map(|a| (1.0 - a.norm_sqr()).max(0.0)).collect()
}

/// `D_lm^j(t)` for every start node `j`.
pub fn walker_distance_profile(pl: &Propagator, pm: &Propagator, t: f64) -> Result<Vec<f64>> {
    if pl.dim() != pm.dim() {
        return Err(Error::DimensionMismatch { expected: pl.dim(), actual: pm.dim() });
    }
    check_time(t)?;
    Ok(overlap_distances(&pl.unitary(t), &pm.unitary(t)))
}

/// `D_lm^j(t)` for a single start node.
pub fn walker_distance(pl: &Propagator, pm: &Propagator, t: f64, j: usize) -> Result<f64> {
    if j >= pl.dim() {
        return Err(Error::invalid(format!("node {j} outside 0..{}", pl.dim())));
    }
    Ok(walker_distance_profile(pl, pm, t)?[j])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceKind {
    Qc,
    Pairwise,
}

impl fmt::Display for DistanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DistanceKind::Qc => "qc",
            DistanceKind::Pairwise => "pairwise",
        })
    }
}

impl FromStr for DistanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "qc" => Ok(DistanceKind::Qc),
            "pairwise" | "walker" => Ok(DistanceKind::Pairwise),
            other => Err(Error::invalid(format!("unknown distance kind '{other}'"))),
        }
    }
}

/// One global distance. Walker 0 is the non-chiral walker; `m` is absent
/// for quantum–classical values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceValue {
    pub l: usize,
    pub m: Option<usize>,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    /// Sample standard deviation; 0 for a single value.
    pub std: f64,
    pub min: f64,
    pub max: f64,
    /// `(percent, value)` at 5, 25, 50, 75 and 95 percent.
    pub quantiles: Vec<(u32, f64)>,
}

impl Summary {
    pub fn of(values: &[f64]) -> Result<Summary> {
        if values.is_empty() {
            return Err(Error::invalid("cannot summarize an empty distribution"));
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len();
        let mean = sorted.iter().sum::<f64>() / n as f64;
        let std =
            if n > 1 { (sorted.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt() } else { 0.0 };
        let quantiles = [5u32, 25, 50, 75, 95].iter().map(|&p| (p, quantile(&sorted, p as f64 / 100.0))).collect();
        Ok(Summary { count: n, mean, std, min: sorted[0], max: sorted[n - 1], quantiles })
    }
}

/// Linear interpolation between order statistics at position `q·(n−1)`.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    let h = q * (sorted.len() - 1) as f64;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub kind: DistanceKind,
    pub time: f64,
    pub walkers: usize,
    pub sampler: SamplerSpec,
    pub values: Vec<DistanceValue>,
    pub summary: Summary,
}

/// Global distances for the non-chiral walker plus `walkers` chiral walkers
/// drawn like a swarm (walker `m` uses seed `sampler.seed ^ m`).
///
/// `Qc` yields `walkers + 1` values; `Pairwise` yields one value per
/// unordered walker pair, `C(walkers + 1, 2)` in total.
pub fn swarm_distance_distribution(
    graph: &Graph,
    sampler: &SamplerSpec,
    walkers: usize,
    t: f64,
    kind: DistanceKind,
) -> Result<DistanceReport> {
    if walkers == 0 {
        return Err(Error::invalid("at least one chiral walker is required"));
    }
    if graph.node_count() == 0 {
        return Err(Error::invalid("graph has no nodes"));
    }
    check_time(t)?;
    let props: Vec<Propagator> = (0..=walkers)
        .into_par_iter()
        .map(|m| {
            let phases = (m > 0).then(|| sample_phases(graph, &sampler.walker(m as u64)));
            diagonalize(&build_generator(graph, phases.as_deref())?)
        })
        .collect::<Result<_>>()?;

    let values: Vec<DistanceValue> = match kind {
        DistanceKind::Qc => {
            let classical = ClassicalPropagator::new(graph)?;
            let pc = classical.transition_matrix(t);
            props
                .par_iter()
                .enumerate()
                .map(|(l, p)| {
                    let pq = p.transition_matrix(t);
                    let per_node: Vec<f64> =
                        pq.axis_iter(Axis(0)).zip(pc.axis_iter(Axis(0))).map(|(q, c)| 1.0 - q.dot(&c)).collect();
                    let distance = global_max_over_sources(per_node.len(), |j| per_node[j])?;
                    Ok(DistanceValue { l, m: None, distance })
                })
                .collect::<Result<_>>()?
        }
        DistanceKind::Pairwise => {
            let unitaries: Vec<Array2<Complex64>> = props.par_iter().map(|p| p.unitary(t)).collect();
            let pairs: Vec<(usize, usize)> =
                (0..=walkers).flat_map(|l| (l + 1..=walkers).map(move |m| (l, m))).collect();
            pairs
                .par_iter()
                .map(|&(l, m)| {
                    let per_node = overlap_distances(&unitaries[l], &unitaries[m]);
                    let distance = global_max_over_sources(per_node.len(), |j| per_node[j])?;
                    Ok(DistanceValue { l, m: Some(m), distance })
                })
                .collect::<Result<_>>()?
        }
    };
    let raw: Vec<f64> = values.iter().map(|v| v.distance).collect();
    let summary = Summary::of(&raw)?;
    Ok(DistanceReport { kind, time: t, walkers, sampler: *sampler, values, summary })
}

/// `walker,distance` or `walker_l,walker_m,distance` rows with a header.
pub fn write_distance_csv<W: Write>(report: &DistanceReport, mut w: W) -> Result<()> {
    match report.kind {
        DistanceKind::Qc => {
            writeln!(w, "walker,distance")?;
            for v in &report.values {
                writeln!(w, "{},{:?}", v.l, v.distance)?;
            }
        }
        DistanceKind::Pairwise => {
            writeln!(w, "walker_l,walker_m,distance")?;
            for v in &report.values {
                writeln!(w, "{},{},{:?}", v.l, v.m.unwrap_or(v.l), v.distance)?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::SamplerKind;

    fn prop(g: &Graph, phases: Option<&[f64]>) -> Propagator {
        diagonalize(&build_generator(g, phases).unwrap()).unwrap()
    }

    #[test]
    fn zero_time_distances_vanish() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let p = prop(&g, Some(&[0.3, -1.0, 2.0, 0.5]));
        let c = ClassicalPropagator::new(&g).unwrap();
        assert!(qc_distance_profile(&p, &c, 0.0).unwrap().iter().all(|&d| d.abs() < 1e-15));
        assert!(walker_distance_profile(&p, &prop(&g, None), 0.0).unwrap().iter().all(|&d| d.abs() < 1e-15));
    }

    #[test]
    fn path2_closed_form() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let t: f64 = 1.0;
        let q12 = t.sin().powi(2);
        let c12 = (1.0 - (-2.0 * t).exp()) / 2.0;
        let want = 1.0 - ((1.0 - c12) * (1.0 - q12) + c12 * q12);
        let got = quantum_classical_distance(&prop(&g, None), &g, t, 0).unwrap();
        assert!((got - want).abs() < 1e-10);
    }

    #[test]
    fn self_distance_is_zero() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]).unwrap();
        let p = prop(&g, Some(&[0.2, 1.4, -0.7, 0.9, 3.0]));
        for j in 0..5 {
            assert!(walker_distance(&p, &p, 2.3, j).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn global_max_cases() {
        assert_eq!(global_max_over_sources(4, |_| 0.25).unwrap(), 0.25);
        assert_eq!(global_max_over_sources(1, |_| 0.7).unwrap(), 0.7);
        assert_eq!(global_max_over_sources(3, |j| [0.1, 0.9, 0.4][j]).unwrap(), 0.9);
        assert!(global_max_over_sources(0, |_| 0.0).is_err());
    }

    #[test]
    fn quantiles_interpolate() {
        let s = Summary::of(&[4.0, 1.0, 3.0, 2.0, 5.0]).unwrap();
        assert_eq!(s.quantiles[2], (50, 3.0));
        assert_eq!(s.quantiles[1], (25, 2.0));
        assert!((s.quantiles[0].1 - 1.2).abs() < 1e-15);
        assert_eq!((s.min, s.max, s.mean), (1.0, 5.0, 3.0));
    }

    #[test]
    fn distribution_sizes_and_csv() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap();
        let sampler = SamplerSpec::new(SamplerKind::UniformFull, 4);
        let qc = swarm_distance_distribution(&g, &sampler, 3, 1.0, DistanceKind::Qc).unwrap();
        assert_eq!(qc.values.len(), 4);
        let pw = swarm_distance_distribution(&g, &sampler, 3, 1.0, DistanceKind::Pairwise).unwrap();
        assert_eq!(pw.values.len(), 6);
        let one = swarm_distance_distribution(&g, &sampler, 1, 1.0, DistanceKind::Pairwise).unwrap();
        assert_eq!(one.values.len(), 1);
        assert_eq!((one.values[0].l, one.values[0].m), (0, Some(1)));
        for v in qc.values.iter().chain(&pw.values) {
            assert!((-1e-10..=1.0 + 1e-10).contains(&v.distance));
        }
        let mut out = Vec::new();
        write_distance_csv(&pw, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("walker_l,walker_m,distance\n0,1,"));
        assert_eq!(text.lines().count(), 7);
    }
}
