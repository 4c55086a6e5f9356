use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stateless 64-bit finalizer (the splitmix64 output function).
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One generator per (seed, feature, probe, iteration) tuple, so any single
/// Monte-Carlo draw can be reproduced without replaying the others and the
/// evaluation order never matters.  Components are absorbed sequentially
/// with a full mixing round each, so permuted tuples land on different
/// streams.
pub(crate) fn sample_stream(seed: u64, feature: u64, probe: u64, iteration: u64) -> ChaCha8Rng {
    let mut state = mix(seed ^ 0xD6E8_FEB8_6659_FD93);
    for component in [feature, probe, iteration] {
        state = mix(state.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(component));
    }
    ChaCha8Rng::seed_from_u64(state)
}
