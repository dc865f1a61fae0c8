//! Stable seed derivation.
//!
//! Every derived seed goes through the SplitMix64 finalizer, which is a bijection on
//! `u64`. For a fixed master seed, [`derive`] is therefore injective in its index,
//! so trial seeds never collide.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output function.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for the `index`-th child of `master`: `mix64(master + (index + 1) * γ)`.
pub fn derive(master: u64, index: u64) -> u64 {
    mix64(master.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

/// Derives along a path of indices, e.g. `(seed, [walker, pass, count])`.
pub fn derive_path(master: u64, path: &[u64]) -> u64 {
    path.iter().fold(master, |s, &i| derive(s, i))
}

/// Maps a hash to a uniform double in `(0, 1]` using its top 53 bits.
pub fn unit_interval(h: u64) -> f64 {
    ((h >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Bernoulli(1/`count`) decision from a hash; the modulo bias is below 2^-32 for 32-bit counts.
pub fn one_in(h: u64, count: u64) -> bool {
    debug_assert!(count >= 1);
    h % count == 0
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
