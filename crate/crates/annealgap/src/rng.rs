//! Deterministic seeding helpers.
//!
//! All randomness in this crate flows through ChaCha12 streams keyed by
//! explicit 64-bit seeds, so every artifact is reproducible from the seeds
//! recorded in its file header or instance record.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// SplitMix64 step; a fixed, platform-independent mixing function.
fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive a child seed from a master seed and an index.
///
/// Used to give every instance in a batch its own independent stream while
/// keeping the whole batch a pure function of the master seed.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index.wrapping_add(1)))
}

/// Seeded ChaCha12 stream.
pub fn stream(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}
