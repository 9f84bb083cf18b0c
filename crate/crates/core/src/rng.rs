//! Seed-derived random substreams.
//!
//! Every random draw in the crate comes from a [`ChaCha8Rng`] whose seed is a
//! hash of a master seed and a path of tags (SNR index, trial index, purpose,
//! read index, ...). Two streams with different paths are independent, and a
//! stream never depends on how many other streams were consumed before it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Stream = ChaCha8Rng;

/// Purpose tags used by the harness when deriving per-trial substreams.
pub mod tag {
    pub const CHANNEL: u64 = 0x4348_414e;
    pub const DATA: u64 = 0x4441_5441;
    pub const SOLVER: u64 = 0x534f_4c56;
    pub const NOISE: u64 = 0x4e4f_4953;
    pub const READ: u64 = 0x5245_4144;
    pub const ICE: u64 = 0x4943_4500;
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Mixes a master seed with a tag path into a single 64-bit seed.
pub fn derive_seed(seed: u64, path: &[u64]) -> u64 {
    path.iter()
        .fold(splitmix64(seed), |acc, &t| splitmix64(acc ^ splitmix64(t)))
}

/// Independent stream for `(seed, path...)`.
pub fn substream(seed: u64, path: &[u64]) -> Stream {
    let mixed = derive_seed(seed, path);
    let mut key = [0u8; 32];
    for (i, chunk) in key.chunks_mut(8).enumerate() {
        chunk.copy_from_slice(&splitmix64(mixed.wrapping_add(i as u64)).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}
