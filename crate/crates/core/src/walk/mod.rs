//! Quantum and classical walk dynamics on a [`crate::graph::Graph`].

mod classical;
mod generator;
mod propagator;
mod sampler;

pub use classical::{classical_transition_matrix, ClassicalPropagator};
pub use generator::{build_generator, read_phases, write_phases, ChiralGenerator};
pub use propagator::{diagonalize, Propagator};
pub use sampler::{row_imbalance, sample_phases, SamplerKind, SamplerSpec};
