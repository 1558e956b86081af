//! Counter-based seed derivation.
//!
//! Parallel stages (tree training, bootstrap draws, fold assignment) each
//! derive an independent RNG stream from a master seed and a task index, so
//! results do not depend on scheduling or thread count.

/// SplitMix64 finalizer; decorrelates consecutive seeds.
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed for stream `index` of a computation keyed by `master`.
pub fn stream_seed(master: u64, index: u64) -> u64 {
    splitmix64(splitmix64(master) ^ splitmix64(index.wrapping_add(0x5851_f42d_4c95_7f2d)))
}
