//! Seed derivation.
//!
//! Every random stream in the toolkit is derived from a single master seed.
//! Consumers get their own sub-seed through a role tag, and Monte Carlo runs
//! get a per-run seed from `(seed, run index)`, so a run's outcome never
//! depends on which worker executed it or on how many other consumers exist.
//!
//! Within a run every edge owns one uniform coin, a pure function of the run
//! seed and the edge index. Two seed multisets evaluated under the same run
//! therefore see the same live edges, whatever order the cascade visits them.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator used for every stochastic step.
pub type Rng = ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Sub-seed for the Monte Carlo run with the given index.
#[inline]
pub fn run_seed(master: u64, run: u64) -> u64 {
    mix64(mix64(master).wrapping_add(run.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

/// Sub-seed for a named consumer (`"tr"`, `"mc"`, ...).
pub fn derive_seed(master: u64, tag: &str) -> u64 {
    // FNV-1a over the tag; stable across platforms and releases.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in tag.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    mix64(master ^ mix64(h))
}

pub fn rng_from_seed(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

/// Uniform coin in `[0, 1)` for edge `edge` in the run with seed `run_seed`.
#[inline]
pub fn edge_coin(run_seed: u64, edge: usize) -> f64 {
    let x = mix64(run_seed.wrapping_add((edge as u64).wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)));
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
