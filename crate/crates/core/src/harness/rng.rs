//! Counter-mode seeding: the generator of trial `i` depends only on
//! `(seed, i, attempt)`, so execution order never changes results.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type TrialRng = ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of attempt `attempt` of trial `index`.
pub fn trial_seed(seed: u64, index: u64, attempt: u32) -> u64 {
    splitmix64(splitmix64(splitmix64(seed) ^ index) ^ attempt as u64)
}

pub fn rng_from_seed(trial_seed: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(trial_seed)
}
