//! Seeded, splittable randomness.
//!
//! Everything stochastic in this crate draws from a ChaCha stream cipher RNG:
//! deterministic across platforms, and a master seed splits into independent
//! per-trial streams via the cipher's stream counter, so any trial of a sweep
//! is reproducible in isolation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The RNG used throughout the crate.
pub type SeededRng = ChaCha8Rng;

/// RNG from a bare seed (stream 0).
pub fn seeded(seed: u64) -> SeededRng {
    SeededRng::seed_from_u64(seed)
}

/// Independent stream `stream` of master seed `seed`.
pub fn seeded_stream(seed: u64, stream: u64) -> SeededRng {
    let mut rng = SeededRng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
