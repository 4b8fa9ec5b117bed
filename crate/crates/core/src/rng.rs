//! Keyed random substreams.
//!
//! Every random object (one clock stream, one replicate's backward pass, ...)
//! draws from its own ChaCha8 stream, keyed by the user seed and a tuple of
//! tags. Results therefore do not depend on thread scheduling or on the order
//! in which streams are created.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub mod tag {
    pub const CLOCK: u64 = 1;
    pub const BACKWARD: u64 = 2;
    pub const FORWARD: u64 = 3;
    pub const GILLESPIE: u64 = 4;
    pub const INITIAL: u64 = 5;
    pub const CHECK: u64 = 6;
}

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn mix_tags(tags: &[u64]) -> u64 {
    let mut h = 0x243F_6A88_85A3_08D3u64;
    for &t in tags {
        let mut s = h ^ t;
        h = splitmix(&mut s) ^ h.rotate_left(17);
    }
    h
}

/// Independent generator for `(seed, tags)`.
pub fn substream(seed: u64, tags: &[u64]) -> ChaCha8Rng {
    let mut s = seed;
    let mut key = [0u8; 32];
    for chunk in key.chunks_mut(8) {
        chunk.copy_from_slice(&splitmix(&mut s).to_le_bytes());
    }
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(mix_tags(tags));
    rng
}
