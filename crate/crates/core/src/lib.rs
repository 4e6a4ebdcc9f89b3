//! Link prediction on undirected graphs with swarms of chiral continuous-time
//! quantum walks, plus classical baselines, cross-validation and dynamical
//! distance diagnostics.

pub mod baselines;
pub mod distance;
pub mod error;
pub mod evaluation;
pub mod graph;
mod linalg;
mod rng;
pub mod scoring;
pub mod walk;

pub use error::{Error, Result};
pub use linalg::{hermitian_eigh, symmetric_eigh};
