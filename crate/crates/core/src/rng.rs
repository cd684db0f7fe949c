//! The one pseudo-random generator used for every seeded operation.
//!
//! Generator: xoshiro256** seeded from a `u64` through SplitMix64 (the
//! reference seeding procedure, as implemented by
//! `rand_xoshiro::Xoshiro256StarStar::seed_from_u64`).
//!
//! Bounded draws use the multiply-shift map `j = (x * bound) >> 64` on one
//! 64-bit output `x`. Shuffles are Fisher–Yates running from the last
//! position down: for `i = n-1, …, 1`, draw `j` in `0..=i` and swap `i, j`.
//! Anyone re-implementing these three steps reproduces our permutations
//! exactly.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

pub struct SeededRng(Xoshiro256StarStar);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(Xoshiro256StarStar::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform-ish integer in `0..bound`. `bound` must be nonzero.
    pub fn below(&mut self, bound: u64) -> u64 {
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }

    /// Seeded permutation of `0..n`.
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..n).collect();
        self.shuffle(&mut idx);
        idx
    }
}
