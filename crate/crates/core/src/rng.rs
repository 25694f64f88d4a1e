//! Seeded randomness.
//!
//! Every stream in the crate is a ChaCha8 generator (`rand_chacha::ChaCha8Rng`)
//! keyed by a 64-bit seed through `SeedableRng::seed_from_u64`. Independent
//! substreams (per Monte Carlo block, per search cell, per retry) are keyed by
//! mixing the parent seed with a tag and an index through SplitMix64, so a
//! result depends only on `(inputs, seed)` and never on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of substream `index` under `tag`.
pub fn derive_seed(seed: u64, tag: u64, index: u64) -> u64 {
    splitmix64(splitmix64(seed ^ splitmix64(tag)).wrapping_add(index))
}

pub fn substream(seed: u64, tag: u64, index: u64) -> SeededRng {
    rng_from_seed(derive_seed(seed, tag, index))
}
