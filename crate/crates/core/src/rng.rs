//! Seeded random number generation with a pinned, portable stream.
//!
//! Every randomised routine in this crate draws from [`SeededRng`], a thin
//! wrapper around ChaCha8 keyed by a single `u64` seed. The stream semantics
//! are part of the crate contract, because regression constants are pinned
//! against fixed seeds:
//!
//! * the seed is expanded by placing it in the first 8 bytes of the 32-byte
//!   ChaCha key (little-endian, remaining bytes zero);
//! * `unit_f64` consumes exactly one `u64` block draw and maps it to `[0, 1)`
//!   by taking the top 53 bits;
//! * `below(k)` consumes exactly one `u64` draw and reduces it modulo `k`.
//!
//! The modulo reduction in `below` is slightly biased for `k` that are not
//! powers of two; the bias is irrelevant for instance generation and keeping
//! the draw count fixed makes streams easy to reason about.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic generator; identical seeds yield identical streams on every
/// platform.
#[derive(Clone, Debug)]
pub struct SeededRng(ChaCha8Rng);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform draw from `[0, 1)` with 53-bit precision.
    pub fn unit_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform-ish draw from `0..k`. Panics if `k == 0`.
    pub fn below(&mut self, k: u64) -> u64 {
        assert!(k > 0, "below(0)");
        self.next_u64() % k
    }

    pub fn bool_with(&mut self, p: f64) -> bool {
        self.unit_f64() < p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_seeds_identical_streams() {
        let mut a = SeededRng::new(7);
        let mut b = SeededRng::new(7);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn unit_f64_in_range() {
        let mut r = SeededRng::new(1);
        for _ in 0..1000 {
            let u = r.unit_f64();
            assert!((0.0..1.0).contains(&u));
        }
    }
}
