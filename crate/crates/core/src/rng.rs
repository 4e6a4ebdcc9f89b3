//! Seeded random streams.
//!
//! Every stochastic step draws from a ChaCha8 generator keyed by
//! `seed ^ index` and placed on a per-purpose stream, so walker `m`, fold
//! repeat `r` and SPM run `r` never share a sequence even under one seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy)]
pub(crate) enum Purpose {
    Phases = 0,
    Folds = 1,
    Perturbation = 2,
}

pub(crate) fn stream(seed: u64, index: u64, purpose: Purpose) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ index);
    rng.set_stream(purpose as u64);
    rng
}
