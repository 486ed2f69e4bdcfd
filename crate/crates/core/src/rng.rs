//! Seeding rules.
//!
//! Every random draw in this crate comes from [`ChaCha8Rng`] seeded through
//! [`rng_from_seed`]. Independent streams (one per Monte Carlo trial, for
//! instance) use [`child_seed`], a SplitMix64 mix of the master seed and the
//! stream index, so stream `t` is the same no matter which thread runs it.

use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// `child_seed(seed, stream) = splitmix64(splitmix64(seed) + (stream + 1) * γ)`
/// with γ the 64-bit golden-ratio increment.
pub fn child_seed(seed: u64, stream: u64) -> u64 {
    splitmix64(splitmix64(seed).wrapping_add(stream.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
