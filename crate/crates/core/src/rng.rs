//! Seeded randomness used across the crate.
//!
//! All stochastic behavior (shot sampling, random sequences, DNA generation,
//! mutation) flows through [`SeededRng`], a thin wrapper over ChaCha12 with
//! hand-rolled uniform conversions. Keeping the conversions in-crate pins the
//! exact output stream for a given seed independently of upstream `rand`
//! distribution changes, which is what makes runs byte-reproducible.

use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};

pub struct SeededRng(ChaCha12Rng);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(ChaCha12Rng::seed_from_u64(seed))
    }

    /// Uniform f64 in [0, 1) from the top 53 bits of one u64 draw.
    pub fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in [0, n). Modulo bias is below 2^-32 for every n
    /// used in this crate and irrelevant next to shot noise.
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.0.next_u64() % n
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }

    /// `count` distinct values drawn uniformly from [0, n).
    pub fn distinct_below(&mut self, n: u64, count: usize) -> Vec<u64> {
        assert!(count as u64 <= n);
        // Dense range: partial shuffle. Sparse range: rejection into a set.
        if n <= 4096 {
            let mut pool: Vec<u64> = (0..n).collect();
            self.shuffle(&mut pool);
            pool.truncate(count);
            pool
        } else {
            let mut seen = std::collections::BTreeSet::new();
            let mut out = Vec::with_capacity(count);
            while out.len() < count {
                let v = self.below(n);
                if seen.insert(v) {
                    out.push(v);
                }
            }
            out
        }
    }
}
