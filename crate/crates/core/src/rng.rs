//! Counter-based randomness: every random decision is drawn from its own
//! ChaCha8 stream keyed by `(seed, stream)`, so outputs do not depend on
//! iteration order or thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Stream reserved for clique packing in the blow-up construction.
pub const PACKING_STREAM: u64 = u64::MAX;

pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Bernoulli(`num/den`) draw for decision `key`, exact for integer ratios.
pub fn bernoulli(seed: u64, key: u64, num: u64, den: u64) -> bool {
    debug_assert!(den > 0 && num <= den);
    if num == 0 {
        return false;
    }
    if num == den {
        return true;
    }
    stream(seed, key).gen_range(0..den) < num
}

/// Fair coin for decision `key`.
pub fn coin(seed: u64, key: u64) -> bool {
    stream(seed, key).gen::<bool>()
}
