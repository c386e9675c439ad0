//! Minimal seedable generator for simulations and randomized checks.
//!
//! splitmix64 has a single 64-bit word of state, passes the usual statistical
//! batteries, and scrambles even adjacent seeds well, which makes it safe to
//! fork one independent stream per trial as `seed ^ trial_index`. Reports
//! that depend on randomness carry the algorithm name so they stay
//! reproducible across versions.

/// splitmix64 generator (Steele, Lea, Flood 2014).
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    /// Identifier recorded in simulation reports.
    pub const ALGORITHM: &'static str = "splitmix64";

    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 random mantissa bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in [0, bound) by the fixed-point multiply reduction.
    /// The 2^-64 selection bias is irrelevant here; what matters is that the
    /// value is a pure function of the stream.
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }
}
