//! Counter-based seed derivation.
//!
//! Every random decision in the engine is drawn from a ChaCha stream whose
//! 64-bit seed is derived from a fixed key path (puzzle, difficulty, seed,
//! purpose, counter). The mixing function is a plain splitmix64 chain so the
//! derived seeds do not depend on the platform or on `std` hashing.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A position in the key-derivation tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeedKey(u64);

impl SeedKey {
    pub fn root(seed: u64) -> Self {
        SeedKey(splitmix(seed))
    }

    /// Derive a child key; distinct labels give independent streams.
    pub fn child(self, label: u64) -> Self {
        SeedKey(splitmix(self.0 ^ splitmix(label.wrapping_add(GOLDEN))))
    }

    pub fn child_str(self, label: &str) -> Self {
        // FNV-1a over the bytes; stable and dependency free.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in label.bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0000_0100_0000_01B3);
        }
        self.child(h)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}
