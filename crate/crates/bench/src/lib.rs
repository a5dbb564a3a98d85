//! Fixtures shared by the benchmarks.

use mayss_core::{MayEngine, PrimeContext};

/// The degree p^4 q + p^2 q at p = 7.
pub const TQ7: u64 = (2401 + 49) * 12;

pub fn ctx(p: u64) -> PrimeContext {
    PrimeContext::new(p).expect("odd prime")
}

pub fn engine(p: u64) -> MayEngine {
    MayEngine::new(ctx(p))
}

/// A strip of cells around the h0 h_2 region at p = 7.
pub fn strip7() -> Vec<(u32, u64)> {
    (1..=4).flat_map(|s| (580..=620).map(move |t| (s, t))).collect()
}
