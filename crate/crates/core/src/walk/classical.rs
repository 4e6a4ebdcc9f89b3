use ndarray::{Array1, Array2};

use crate::error::Result;
use crate::graph::Graph;
use crate::linalg;

/// Continuous-time random walk with kernel `e^{-tL}`, `L = D - A`.
///
/// `L` is symmetric, so the kernel is doubly stochastic.
#[derive(Debug, Clone)]
pub struct ClassicalPropagator {
    eigenvalues: Array1<f64>,
    vectors: Array2<f64>,
}

impl ClassicalPropagator {
    pub fn new(graph: &Graph) -> Result<Self> {
        let mut laplacian = graph.adjacency_matrix().mapv(|a| -a);
        for (j, d) in graph.degrees().into_iter().enumerate() {
            laplacian[[j, j]] = d as f64;
        }
        let (eigenvalues, vectors) = linalg::symmetric_eigh(&laplacian)?;
        Ok(ClassicalPropagator { eigenvalues, vectors })
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn transition_matrix(&self, t: f64) -> Array2<f64> {
        if t == 0.0 {
            return Array2::eye(self.dim());
        }
        let decay = self.eigenvalues.mapv(|mu| (-mu * t).exp());
        (&self.vectors * &decay).dot(&self.vectors.t())
    }
}

pub fn classical_transition_matrix(graph: &Graph, t: f64) -> Result<Array2<f64>> {
    Ok(ClassicalPropagator::new(graph)?.transition_matrix(t))
}
