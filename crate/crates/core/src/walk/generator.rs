use std::collections::HashMap;
use std::io::{BufRead, Write};

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Hamiltonian with entry `e^{iφ_jk}` on every edge and zero elsewhere.
///
/// One phase is stored per edge, for the orientation `u → v` with `u < v`;
/// the reverse orientation carries `-φ`, so the matrix is Hermitian by
/// construction.
#[derive(Debug, Clone)]
pub struct ChiralGenerator<'g> {
    graph: &'g Graph,
    phases: Vec<f64>,
}

/// All-zero phases (the adjacency matrix) when `phases` is `None`.
pub fn build_generator<'g>(graph: &'g Graph, phases: Option<&[f64]>) -> Result<ChiralGenerator<'g>> {
    let phases = match phases {
        None => vec![0.0; graph.edge_count()],
        Some(p) if p.len() == graph.edge_count() => p.to_vec(),
        Some(p) => return Err(Error::DimensionMismatch { expected: graph.edge_count(), actual: p.len() }),
    };
    if let Some(bad) = phases.iter().find(|p| !p.is_finite()) {
        return Err(Error::invalid(format!("phase {bad} is not finite")));
    }
    Ok(ChiralGenerator { graph, phases })
}

impl<'g> ChiralGenerator<'g> {
    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    /// Phases aligned with [`Graph::edges`].
    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    /// Oriented phase `φ_jk`, or `None` when `(j, k)` is not an edge.
    pub fn phase(&self, j: usize, k: usize) -> Option<f64> {
        let idx = self.graph.edge_index(j, k)?;
        let p = self.phases[idx];
        Some(if j < k { p } else { -p })
    }

    /// Whether any phase is nonzero.
    pub fn is_chiral(&self) -> bool {
        self.phases.iter().any(|&p| p != 0.0)
    }

    pub fn matrix(&self) -> Array2<Complex64> {
        let n = self.graph.node_count();
        let mut h = Array2::zeros((n, n));
        for (&(u, v), &p) in self.graph.edges().iter().zip(&self.phases) {
            let z = Complex64::from_polar(1.0, p);
            h[[u, v]] = z;
            h[[v, u]] = z.conj();
        }
        h
    }
}

/// Writes one `u<TAB>v<TAB>phase` line per edge with `u < v` by label. Phases
/// are printed in shortest round-trip form.
pub fn write_phases<W: Write>(graph: &Graph, phases: &[f64], mut out: W) -> Result<()> {
    if phases.len() != graph.edge_count() {
        return Err(Error::DimensionMismatch { expected: graph.edge_count(), actual: phases.len() });
    }
    let mut lines: Vec<(&str, &str, f64)> = graph
        .edges()
        .iter()
        .zip(phases)
        .map(|(&(u, v), &p)| {
            let (a, b) = (graph.label(u), graph.label(v));
            if a <= b {
                (a, b, p)
            } else {
                (b, a, -p)
            }
        })
        .collect();
    lines.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
    for (a, b, p) in lines {
        writeln!(out, "{a}\t{b}\t{p:?}")?;
    }
    Ok(())
}

/// Reads a phase file written by [`write_phases`]. Every edge of `graph` must
/// appear exactly once and no other pair may appear.
pub fn read_phases<R: BufRead>(graph: &Graph, reader: R) -> Result<Vec<f64>> {
    let index: HashMap<&str, usize> = graph.label_index();
    let mut phases = vec![f64::NAN; graph.edge_count()];
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parse_err = |message: String| Error::Parse { line: i + 1, message };
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(parse_err(format!("expected 3 tab-separated fields, found {}", fields.len())));
        }
        let a = *index.get(fields[0]).ok_or_else(|| parse_err(format!("unknown node '{}'", fields[0])))?;
        let b = *index.get(fields[1]).ok_or_else(|| parse_err(format!("unknown node '{}'", fields[1])))?;
        let p: f64 = fields[2].trim().parse().map_err(|_| parse_err(format!("bad phase '{}'", fields[2])))?;
        let e = graph
            .edge_index(a, b)
            .ok_or_else(|| parse_err(format!("({}, {}) is not an edge", fields[0], fields[1])))?;
        if !phases[e].is_nan() {
            return Err(parse_err("edge listed twice".into()));
        }
        phases[e] = if a < b { p } else { -p };
    }
    if phases.iter().any(|p| p.is_nan()) {
        return Err(Error::invalid("phase file does not cover every edge"));
    }
    Ok(phases)
}
