//! Deterministic, portable randomness.
//!
//! All randomness in this crate flows through the ChaCha8 stream cipher
//! RNG (`rand_chacha::ChaCha8Rng`), seeded through `SeedableRng::
//! seed_from_u64`. ChaCha8 produces an identical stream for a given seed
//! on every platform, so golden tests and Monte-Carlo results reproduce
//! exactly across machines.
//!
//! Independent sub-streams (one per Monte-Carlo point, one per pipeline
//! stage) are derived with [`derive_seed`], a SplitMix64-style mix with
//! pinned constants.

use crate::types::BitString;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer with the standard constants.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives an independent seed from a base seed and an index.
///
/// Defined as `splitmix64(base_seed ^ splitmix64(index))` so that nearby
/// indices map to uncorrelated seeds. This exact formula is part of the
/// reproducibility contract: sweep results depend only on (base seed,
/// point index), never on execution order.
pub fn derive_seed(base_seed: u64, index: u64) -> u64 {
    splitmix64(base_seed ^ splitmix64(index))
}

/// Generates `n` deterministic pseudo-random bits.
///
/// Bit `i` is the low bit of the `i`-th `u32` drawn from a fresh
/// `ChaCha8Rng` seeded with `seed_from_u64(seed)`. Identical `(n, seed)`
/// yield identical output on every platform. Only whole-call determinism
/// is guaranteed; prefixes of calls with different `n` are not
/// guaranteed to match.
pub fn random_bits(n: usize, seed: u64) -> BitString {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    BitString::from_bools((0..n).map(|_| rng.next_u32() & 1 == 1))
}

/// A ChaCha8 RNG seeded for one named stage; shared constructor so every
/// module draws from the same generator family.
pub(crate) fn stream(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
