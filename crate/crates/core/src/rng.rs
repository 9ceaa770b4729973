//! The one random source used by generators and the simulator.
//!
//! Bits come from SplitMix64 with the state initialised to the seed
//! (increment `0x9e3779b97f4a7c15`, finaliser multipliers
//! `0xbf58476d1ce4e5b9` and `0x94d049bb133111eb`, shifts 30/27/31).
//! Derived draws are fixed here so that another implementation can replay
//! the same streams:
//!
//! * `below(n)`: draw `x` until `x < n * floor(2^64 / n)`, return `x mod n`;
//! * `unit()`: `(x >> 11) * 2^-53`;
//! * `sample(n, k)`: partial Fisher-Yates, `for i in 0..k { swap(i, i + below(n - i)) }`,
//!   returning the first `k` entries in draw order.

use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

#[derive(Debug, Clone)]
pub struct SeededRng(SplitMix64);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `0..n`. Panics if `n == 0`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0)");
        let zone = (u64::MAX / n) * n;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % n;
            }
        }
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// `k` distinct indices from `0..n`, uniformly, in draw order.
    pub fn sample(&mut self, n: usize, k: usize) -> Vec<usize> {
        assert!(k <= n, "sample({n}, {k})");
        let mut idx: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = i + self.below((n - i) as u64) as usize;
            idx.swap(i, j);
        }
        idx.truncate(k);
        idx
    }
}
