//! Slow, independent reference implementations used as test oracles, plus
//! random graph fixtures. Nothing here shares code with the library under
//! test: graphs are plain edge lists and linear algebra goes through
//! nalgebra.

pub mod graphs;
pub mod metrics;
pub mod scores;
pub mod walks;

pub type Edges = Vec<(usize, usize)>;
