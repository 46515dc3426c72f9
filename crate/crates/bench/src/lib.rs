//! Shared fixtures for the criterion benchmarks.

use temporal_encoder::synth::derive_seed;
use temporal_encoder::{generate_temporal, EvolutionParams, Result, SbmParams, SyntheticGraph};

/// Vertex count at which the reference block probabilities apply unscaled.
pub const BASE_N: usize = 5000;

/// Evolving block-model graph whose edge count grows linearly in `n`.
pub fn fixture(n: usize, steps: usize, seed: u64) -> Result<SyntheticGraph> {
    let sbm = SbmParams::dcsbm_constant_degree(n, BASE_N, derive_seed(seed, n as u64));
    generate_temporal(&sbm, &EvolutionParams { steps, ..Default::default() })
}
