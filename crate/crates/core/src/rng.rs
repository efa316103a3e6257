//! Random sources. Every stochastic routine in the crate draws from a
//! [`ChaCha8Rng`] seeded with `seed_from_u64`, so results are a pure function
//! of the seed.

use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng as Rng;
use sha2::{Digest, Sha256};

/// Identifier recorded in run reports.
pub const RNG_ALGORITHM: &str = "chacha8/rand_chacha-0.3/seed_from_u64";

pub fn seeded(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

/// Derives a child seed from a base seed and a list of labels.
///
/// The first eight bytes (little endian) of SHA-256 over the base seed and
/// the `/`-joined labels.
pub fn derive_seed(base: u64, labels: &[&str]) -> u64 {
    let mut h = Sha256::new();
    h.update(base.to_le_bytes());
    h.update(labels.join("/").as_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest has 32 bytes"))
}
