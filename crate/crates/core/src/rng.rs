//! Seed derivation.
//!
//! Every random stream in the crate is a `ChaCha8Rng` keyed by a master seed
//! and a short list of integer labels (walker id, trial id, purpose tag...).
//! Streams for distinct label lists are independent, so results never depend
//! on scheduling order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Stream purpose: jump lengths and destinations.
pub const JUMPS: u64 = 0x4a55_4d50;
/// Stream purpose: tie choices along direct-paths.
pub const PATHS: u64 = 0x5041_5448;
/// Stream purpose: exponent assignment.
pub const EXPONENTS: u64 = 0x4558_504f;

pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Folds labels into a 64-bit key.
pub fn derive_key(master: u64, labels: &[u64]) -> u64 {
    labels
        .iter()
        .fold(splitmix64(master), |acc, &l| splitmix64(acc ^ splitmix64(l.wrapping_add(0x632b_e59b_d9b4_e019))))
}

pub fn stream(master: u64, labels: &[u64]) -> StreamRng {
    let key = derive_key(master, labels);
    let mut seed = [0u8; 32];
    for (i, chunk) in seed.chunks_mut(8).enumerate() {
        chunk.copy_from_slice(&splitmix64(key ^ (i as u64).wrapping_mul(0xd6e8_feb8_6659_fd93)).to_le_bytes());
    }
    ChaCha8Rng::from_seed(seed)
}

/// Counter-based fair coin: a pure function of `(key, a, b)`.
pub fn coin(key: u64, a: u64, b: u64) -> bool {
    splitmix64(splitmix64(key ^ splitmix64(a)) ^ b) >> 63 == 1
}
