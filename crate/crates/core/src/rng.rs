//! Seeded randomness. Every random choice in the crate comes from a
//! [`SplitMix64`] generator; sweeps give sample `i` its own generator seeded
//! with output number `i` (0-based) of `SplitMix64(seed)`, so samples can be
//! drawn in any order or in parallel.

use rand::SeedableRng;
pub use rand_xoshiro::SplitMix64;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// Generator whose state is `seed`.
pub fn rng(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// Output number `index` of `SplitMix64(seed)`, computed directly.
pub fn stream_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Generator for sample `index` of a sweep seeded with `seed`.
pub fn stream(seed: u64, index: u64) -> SplitMix64 {
    rng(stream_seed(seed, index))
}
