//! Stream derivation. Each generated entity gets its own ChaCha stream so
//! the draw sequence for one entity never depends on how many draws another
//! entity consumed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Purpose tags keep streams for different generation phases disjoint even
/// when entity ids collide.
pub mod purpose {
    pub const WORLD: u64 = 1;
    pub const CDR: u64 = 2;
    pub const USER: u64 = 3;
    pub const TRUTH: u64 = 4;
    pub const CLUSTER: u64 = 5;
}

pub fn stream(seed: u64, tags: &[u64]) -> ChaCha8Rng {
    let mut state = splitmix64(seed);
    for &t in tags {
        state = splitmix64(state ^ t);
    }
    ChaCha8Rng::seed_from_u64(state)
}
