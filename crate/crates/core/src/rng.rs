//! Seeded, splittable randomness. Every random choice in the crate comes from
//! a ChaCha20 stream keyed by a user seed and a fixed stream label, so
//! transcripts replay exactly.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub type TropRng = ChaCha20Rng;

/// Independent stream `label` of the generator seeded with `seed`.
pub fn stream(seed: u64, label: u64) -> TropRng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(label);
    rng
}

/// Stream labels used across the crate.
pub mod label {
    pub const KEX_PUBLIC: u64 = 1;
    pub const KEX_ALICE: u64 = 2;
    pub const KEX_BOB: u64 = 3;
    pub const CLASSICAL_SETUP: u64 = 10;
    pub const CLASSICAL_ATTACK: u64 = 11;
    pub const AUT_KEYGEN: u64 = 20;
}
