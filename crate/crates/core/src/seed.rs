//! Seed derivation and random streams.
//!
//! Every random draw in the crate comes from a [`ChaCha8Rng`] built by
//! [`stream_rng`]. Independent per-axis streams share a seed and differ in
//! the ChaCha stream id. Derived seeds carry a purpose tag in their top
//! byte before mixing, so seeds derived for different purposes never
//! collide (the mixer is a bijection on `u64`).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// What a derived seed is used for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeedPurpose {
    EvalPath,
    EvalNoise,
    TunePath,
    TuneNoise,
    Training,
    Suite,
}

impl SeedPurpose {
    fn tag(self) -> u64 {
        match self {
            SeedPurpose::EvalPath => 1,
            SeedPurpose::EvalNoise => 2,
            SeedPurpose::TunePath => 3,
            SeedPurpose::TuneNoise => 4,
            SeedPurpose::Training => 5,
            SeedPurpose::Suite => 6,
        }
    }
}

/// Largest index accepted by [`derive_seed`] (exclusive).
pub const MAX_DERIVED_INDEX: u64 = 1 << 56;

/// splitmix64 finalizer; bijective.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for run `index` of the given purpose: `mix64(base ^ index ^ tag << 56)`.
///
/// For a fixed base the pre-images `base ^ index ^ (tag << 56)` of two
/// different tags differ in the top byte, so the derived seeds differ.
pub fn derive_seed(base: u64, purpose: SeedPurpose, index: u64) -> u64 {
    assert!(index < MAX_DERIVED_INDEX, "derived seed index out of range");
    mix64(base ^ index ^ (purpose.tag() << 56))
}

/// Deterministic generator for `(seed, stream)`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
