//! Graph container method and canonical property testers for the dense
//! graph model.
//!
//! The crate is `no_std` and needs only `alloc`. It provides:
//!
//! * [`Graph`] and [`VertexSet`]: immutable bitset graphs and vertex sets,
//! * [`generate`]: seeded instance generators,
//! * [`search`]: exact independent-set and colorability deciders,
//! * [`container`]: the fingerprint/container generator and the container
//!   lemma validators,
//! * [`oracles`]: exact edit distances and hypergeometric tails,
//! * [`testers`]: the canonical ρ-independent-set, ρ-clique and
//!   k-colorability testers with their sample-size formulas.
//!
//! Fractional set sizes such as `ρn` are always rounded up with
//! [`ceil_count`].
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod bitset;
pub mod container;
mod error;
pub mod generate;
mod graph;
pub mod oracles;
pub mod search;
pub mod testers;

pub use bitset::VertexSet;
pub use error::{Error, Result};
pub use graph::{Graph, Induced};

/// `⌈fraction · n⌉`, treating products within `1e-9` of an integer as that
/// integer so that e.g. `0.3 · 400` counts as 120 rather than 121.
pub fn ceil_count(fraction: f64, n: usize) -> usize {
    let x = fraction * n as f64;
    let r = libm::round(x);
    if libm::fabs(x - r) <= 1e-9 * r.max(1.0) {
        r.max(0.0) as usize
    } else {
        libm::ceil(x).max(0.0) as usize
    }
}

/// Golden-ratio increment of the SplitMix64 generator.
pub const SEED_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-trial seed: `mix64(master + (index + 1) · SEED_GAMMA)`, i.e. the
/// `index`-th output of a SplitMix64 stream started at `master`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    mix64(master.wrapping_add(index.wrapping_add(1).wrapping_mul(SEED_GAMMA)))
}
