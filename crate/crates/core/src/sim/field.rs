use std::ops::Range;

use crate::error::{Error, Result};
use crate::rng::SeededRng;

/// Integers modulo a prime `q < 2^32`, so products fit in a `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    q: u64,
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self> {
        if q >= 1 << 32 || !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(PrimeField { q })
    }

    pub fn order(self) -> u64 {
        self.q
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.q
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.q - b) % self.q
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.q
    }

    /// Inverse of a nonzero element.
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.q));
        let (mut base, mut exp, mut acc) = (a % self.q, self.q - 2, 1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn random(self, rng: &mut SeededRng) -> u64 {
        rng.below(self.q)
    }

    pub fn random_nonzero(self, rng: &mut SeededRng) -> u64 {
        1 + rng.below(self.q - 1)
    }

    /// `acc += c * row`.
    pub fn axpy(self, acc: &mut [u64], c: u64, row: &[u64]) {
        for (a, &r) in acc.iter_mut().zip(row) {
            *a = self.add(*a, self.mul(c, r));
        }
    }

    /// Rank of the rows restricted to the columns in `cols`.
    pub fn rank(self, rows: &[Vec<u64>], cols: Range<usize>) -> usize {
        let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r[cols.clone()].to_vec()).collect();
        let width = cols.len();
        let mut rank = 0;
        for c in 0..width {
            let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(rank, p);
            let inv = self.inv(m[rank][c]);
            for x in m[rank].iter_mut() {
                *x = self.mul(*x, inv);
            }
            let pivot = m[rank].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != rank && row[c] != 0 {
                    let f = self.q - row[c];
                    self.axpy(row, f, &pivot);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Whether `v` lies in the row span of `rows`.
    pub fn in_span(self, rows: &[Vec<u64>], v: &[u64]) -> bool {
        let width = v.len();
        let mut with = rows.to_vec();
        with.push(v.to_vec());
        self.rank(rows, 0..width) == self.rank(&with, 0..width)
    }
}
