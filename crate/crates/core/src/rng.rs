//! Seeded randomness.
//!
//! All random draws in the crate go through [`ChaCha8Rng`] so that every
//! artifact is reproducible from a single `u64` seed, independent of the
//! platform and of `rand`'s unstable `StdRng` choice.

pub use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

/// New generator from a bare seed.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derive an independent stream seed from a global seed and an index
/// (splitmix64 over the xored pair, twice for avalanche).
pub fn derive_seed(global: u64, index: u64) -> u64 {
    let mut z = global ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    for _ in 0..2 {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^= z >> 31;
    }
    z
}

/// Derive a seed from a global seed and a string label (for named streams
/// such as "validation" that must not collide with indexed streams).
pub fn derive_seed_labeled(global: u64, label: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    derive_seed(global, h)
}
