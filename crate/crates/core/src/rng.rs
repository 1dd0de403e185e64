//! Seeding contract.
//!
//! All randomness goes through [`Rng`], ChaCha8 seeded from a `u64` via
//! `SeedableRng::seed_from_u64`. The algorithm is portable and fixed by the
//! `rand_chacha` version, so results reproduce across platforms.
//!
//! Sector `s` of a partitioned sampler uses the stream `seed ^ s`, which keeps
//! sectors independent of each other and of execution order. Repeated trials
//! derive their seeds with [`derive_seed`].

use rand::SeedableRng;

pub type Rng = rand_chacha::ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

#[inline]
pub fn sector_seed(seed: u64, sector: usize) -> u64 {
    seed ^ sector as u64
}

/// SplitMix64 finalizer applied to `base + stream * golden_gamma`.
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    let mut z = base.wrapping_add(stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
